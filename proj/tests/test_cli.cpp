#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cilb/cli.hpp"
#include "cilb/errors.hpp"

using namespace cilb;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "cilb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path(CILB_TEST_TMPDIR) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::string value_of(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(key + "=", 0) == 0) return line.substr(key.size() + 1);
    }
    return {};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("estimator spec grammar") {
    auto lb = cli::parse_estimator_spec("lb:alpha=0.99");
    CHECK(lb.config.kind == EstimatorKind::lower_bound);
    CHECK(lb.config.alpha == 0.99);
    CHECK(lb.label == "lb_alpha_0.99");

    auto mle = cli::parse_estimator_spec("mle:minsup=3");
    CHECK(mle.config.kind == EstimatorKind::mle);
    CHECK(mle.config.minsup == 3);

    auto pm = cli::parse_estimator_spec("pmean:a=0.17,b=1.06,label=predictive");
    CHECK(pm.config.kind == EstimatorKind::posterior_mean);
    CHECK(pm.config.prior.a() == 0.17);
    CHECK(pm.config.prior.b() == 1.06);
    CHECK(pm.label == "predictive");

    CHECK(cli::parse_estimator_spec("laplace").config.kind == EstimatorKind::laplace);
    CHECK(cli::parse_estimator_spec("cp").config.kind == EstimatorKind::clopper_pearson);

    CHECK_THROWS_AS(cli::parse_estimator_spec("median"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("lb:beta=2"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("lb:alpha"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("lb:alpha=1.5"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("pmean:a=-1"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("mle:minsup=0"), ParseError);
    CHECK_THROWS_AS(cli::parse_estimator_spec("mle:minsup=x"), ParseError);
}

TEST_CASE("ratio parsing") {
    CHECK(cli::parse_ratio("0.25") == 0.25);
    CHECK(cli::parse_ratio("1/4") == 0.25);
    CHECK_THROWS_AS(cli::parse_ratio("1/0"), ParseError);
    CHECK_THROWS_AS(cli::parse_ratio("a/b"), ParseError);
    CHECK(cli::parse_ratio_list("0,1/1,1/2").size() == 3);
}

TEST_CASE("table command") {
    const auto six = run({"table", "--n-max", "6", "--alpha", "0.99"});
    CHECK(six.code == 0);
    CHECK(line_count(six.out) == 28);
    CHECK(six.out.rfind("n,x,mle,laplace,theta_lb\n1,0,0.00000,0.33333,0.00501\n", 0) == 0);
    CHECK(six.out.ends_with("6,6,1.00000,0.87500,0.51795\n"));

    const auto half = run({"table", "--n-max", "1", "--alpha", "0.5"});
    CHECK(half.code == 0);
    CHECK(line_count(half.out) == 3);

    CHECK(run({"table", "--alpha", "1.0"}).code == 2);
    CHECK(run({"table", "--alpha", "0"}).code == 2);
    CHECK(run({"table", "--n-max", "0"}).code == 2);
    CHECK(run({"table", "--prior-a", "-1"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);

    const auto dir = scratch("table");
    CHECK(run({"table", "--out", (dir / "t.csv").string()}).code == 0);
    CHECK(slurp(dir / "t.csv") == six.out);
    CHECK(run({"table", "--out", (dir / "missing" / "t.csv").string()}).code == 1);
}

TEST_CASE("synth command") {
    const auto dir = scratch("synth");
    const auto a = run({"synth", "--seed", "5", "--out", (dir / "a.txt").string(),
                        "--relation-out", (dir / "r.tsv").string(), "--stats-out",
                        (dir / "a.stats").string()});
    REQUIRE(a.code == 0);
    CHECK(value_of(a.out, "transactions") == "1000");
    CHECK(slurp(dir / "a.stats") == a.out);
    CHECK(line_count(slurp(dir / "a.txt")) == 1000);

    const auto b = run({"synth", "--seed", "5", "--out", (dir / "b.txt").string()});
    REQUIRE(b.code == 0);
    CHECK(slurp(dir / "a.txt") == slurp(dir / "b.txt"));

    const auto c = run({"synth", "--relation", (dir / "r.tsv").string(), "--seed", "5", "--out",
                        (dir / "c.txt").string()});
    REQUIRE(c.code == 0);
    CHECK(slurp(dir / "c.txt") == slurp(dir / "a.txt"));

    CHECK(run({"synth", "--count", "0", "--out", (dir / "x.txt").string()}).code == 2);
    CHECK(run({"synth", "--seed", "1"}).code == 2);
    CHECK(run({"synth", "--relation", (dir / "nope.tsv").string(), "--out",
               (dir / "x.txt").string()})
              .code == 1);
    CHECK(run({"synth", "--relation", (dir / "r.tsv").string(), "--parents", "3", "--out",
               (dir / "x.txt").string()})
              .code == 2);

    std::ofstream(dir / "bad.tsv") << "only-one-column\n";
    CHECK(run({"synth", "--relation", (dir / "bad.tsv").string(), "--out",
               (dir / "x.txt").string()})
              .code == 1);
}

TEST_CASE("eval command") {
    const auto dir = scratch("eval");
    const auto tx = (dir / "tx.txt").string();
    const auto rel = (dir / "r.tsv").string();
    REQUIRE(run({"synth", "--seed", "3", "--out", tx, "--relation-out", rel}).code == 0);

    const auto prefix = (dir / "fig4_").string();
    const auto res = run({"eval", "--transactions", tx, "--relation", rel, "--estimator",
                          "lb:alpha=0.99", "--estimator", "mle:minsup=1", "--estimator",
                          "mle:minsup=3", "--out-prefix", prefix});
    REQUIRE(res.code == 0);
    for (const char* label : {"lb_alpha_0.99", "mle_minsup_1", "mle_minsup_3"}) {
        CHECK(fs::exists(dir / ("fig4_curve_" + std::string(label) + ".csv")));
        CHECK(fs::exists(dir / ("fig4_rules_" + std::string(label) + ".csv")));
    }
    const auto summary = slurp(dir / "fig4_summary.csv");
    CHECK(summary == res.out);
    CHECK(summary.rfind("label,auc@2000,final_recall\n", 0) == 0);
    CHECK(line_count(summary) == 4);
    CHECK(slurp(dir / "fig4_curve_lb_alpha_0.99.csv").rfind("rank,hits,recall,precision\n", 0) ==
          0);
    CHECK(slurp(dir / "fig4_rules_lb_alpha_0.99.csv").rfind("item_b,item_a,n,x,score\n", 0) ==
          0);

    const auto pm = run({"eval", "--transactions", tx, "--relation", rel, "--estimator",
                         "pmean:a=0.17,b=1.06", "--out-prefix", (dir / "fig6_").string()});
    CHECK(pm.code == 0);
    CHECK(fs::exists(dir / "fig6_curve_pmean_a_0.17_b_1.06.csv"));

    std::ofstream(dir / "empty.txt").close();
    CHECK(run({"eval", "--transactions", (dir / "empty.txt").string(), "--relation", rel,
               "--estimator", "lb", "--out-prefix", prefix})
              .code == 1);
    CHECK(run({"eval", "--transactions", tx, "--relation", rel, "--estimator", "median",
               "--out-prefix", prefix})
              .code == 2);
    CHECK(run({"eval", "--transactions", tx, "--relation", rel, "--estimator", "lb",
               "--estimator", "lb", "--out-prefix", prefix})
              .code == 2);
    CHECK(run({"eval", "--transactions", tx, "--relation", rel, "--estimator", "lb",
               "--direction", "sideways", "--out-prefix", prefix})
              .code == 2);
}

TEST_CASE("fit-prior command") {
    const auto dir = scratch("fit");
    const auto tx = (dir / "tx.txt").string();
    const auto rel = (dir / "r.tsv").string();
    // Few, frequent parents: P(child | parent) is small for most pairs,
    // which puts heavy prior mass near zero.
    REQUIRE(run({"synth", "--parents", "20", "--children", "50", "--shared", "0", "--seed", "3",
                 "--out", tx, "--relation-out", rel})
                .code == 0);

    const auto fit = run({"fit-prior", "--transactions", tx});
    REQUIRE(fit.code == 0);
    CHECK(std::stod(value_of(fit.out, "a")) < 1.0);
    CHECK(std::stoul(value_of(fit.out, "retained")) >= 2);

    const auto typed = run({"fit-prior", "--transactions", tx, "--relation", rel, "--direction",
                            "typed"});
    CHECK(typed.code == 0);
    CHECK(run({"fit-prior", "--transactions", tx, "--direction", "typed"}).code == 2);

    std::ofstream(dir / "excluded.txt") << "1/2\n0.25\n1\n0\n2/3\n";
    const auto none = run({"fit-prior", "--ratios", (dir / "excluded.txt").string()});
    CHECK(none.code == 1);

    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    {
        std::ofstream f(dir / "uniform.txt");
        for (int i = 0; i < 50000; ++i) f << unit(rng) << '\n';
    }
    const auto uni = run({"fit-prior", "--ratios", (dir / "uniform.txt").string()});
    REQUIRE(uni.code == 0);
    CHECK(std::fabs(std::stod(value_of(uni.out, "a")) - 1.0) < 0.05);
    CHECK(std::fabs(std::stod(value_of(uni.out, "b")) - 1.0) < 0.05);

    const auto kept = run({"fit-prior", "--ratios", (dir / "excluded.txt").string(),
                           "--no-exclude"});
    CHECK(kept.code == 0);
    CHECK(value_of(kept.out, "retained") == "5");
    const auto custom = run({"fit-prior", "--ratios", (dir / "excluded.txt").string(),
                             "--exclude", "1/2"});
    CHECK(custom.code == 0);
    CHECK(value_of(custom.out, "retained") == "4");
    CHECK(run({"fit-prior", "--ratios", (dir / "excluded.txt").string(), "--exclude", "x"})
              .code == 2);
    CHECK(run({"fit-prior"}).code == 2);
}

}
