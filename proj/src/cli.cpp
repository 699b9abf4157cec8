#include "cilb/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <future>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "cilb/errors.hpp"
#include "cilb/evaluation.hpp"
#include "cilb/mining.hpp"
#include "cilb/synth.hpp"
#include "cilb/table.hpp"

namespace cilb::cli {

namespace {

// Relation synthesis and transaction sampling draw from separate streams
// derived from the single --seed value.
constexpr std::uint64_t kDatasetStreamOffset = 0x9E3779B97F4A7C15ULL;

// Bad flag values detected after CLI11 parsing; exits with kExitUsage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double parse_number(std::string_view text) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_count(std::string_view text) {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ParseError("not a non-negative integer: '" + std::string(text) + "'");
    }
    return value;
}

std::string sanitize_label(std::string_view text) {
    std::string label(text);
    for (char& c : label) {
        if (c == ':' || c == ',' || c == '=' || c == '/' || c == ' ') c = '_';
    }
    return label;
}

class OutputFile {
public:
    explicit OutputFile(const std::string& path) : path_(path) {
        if (path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
        if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    }

    std::ostream& stream(std::ostream& fallback) { return file_ ? *file_ : fallback; }

    void close() {
        if (!file_) return;
        file_->close();
        if (!*file_) throw std::runtime_error("failed writing '" + path_ + "'");
    }

private:
    std::string path_;
    std::unique_ptr<std::ofstream> file_;
};

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return in;
}

HierarchicalRelation load_relation(const std::string& path) {
    auto in = open_input(path);
    auto r = read_relation_tsv(in);
    if (r.empty()) throw EmptyRelationError("relation file '" + path + "' has no pairs");
    return r;
}

TransactionDataset load_transactions(const std::string& path) {
    auto in = open_input(path);
    auto d = read_transactions(in);
    if (d.transactions.empty()) {
        throw std::runtime_error("transactions file '" + path + "' is empty");
    }
    return d;
}

Direction resolve_direction(const std::string& name, bool have_relation) {
    if (name == "typed") return Direction::typed_child_condition;
    if (name == "max_both") return Direction::max_both;
    // auto: the relation file carries the parent/child roles.
    return have_relation ? Direction::typed_child_condition : Direction::max_both;
}

CLI::Validator open_unit_interval() {
    return CLI::Validator(
        [](std::string& s) -> std::string {
            double v = 0.0;
            try {
                v = parse_number(s);
            } catch (const ParseError& e) {
                return e.what();
            }
            if (!(v > 0.0 && v < 1.0)) return "value must lie strictly between 0 and 1";
            return {};
        },
        "(0,1)");
}

struct TableOptions {
    std::uint64_t n_max = 6;
    double alpha = 0.99;
    double prior_a = 1.0;
    double prior_b = 1.0;
    std::string out = "-";
};

struct SynthOptions {
    std::string relation;
    std::uint64_t parents = 200;
    std::uint64_t children = 5;
    double shared = 0.1;
    std::uint64_t count = 1000;
    std::uint64_t pairs = 2;
    std::uint64_t seed = 1;
    std::string out;
    std::string relation_out;
    std::string stats_out;
};

struct EvalOptions {
    std::string transactions;
    std::string relation;
    std::vector<std::string> estimators;
    std::string direction = "auto";
    std::string denominator = "observed";
    std::size_t auc_k = 2000;
    std::string out_prefix;
};

struct FitOptions {
    std::string transactions;
    std::string relation;
    std::string ratios;
    std::string direction = "all";
    std::string exclude;
    bool no_exclude = false;
};

int cmd_table(const TableOptions& o, std::ostream& out) {
    const auto rows = generate_table(o.n_max, o.alpha, BetaParams(o.prior_a, o.prior_b));
    OutputFile file(o.out);
    write_table_csv(file.stream(out), rows);
    file.close();
    return kExitOk;
}

int cmd_synth(const SynthOptions& o, std::ostream& out) {
    const HierarchicalRelation r = o.relation.empty()
                                       ? synthesize_relation(o.parents, o.children, o.shared, o.seed)
                                       : load_relation(o.relation);
    const auto d = generate_dataset(r, o.count, o.pairs, o.seed ^ kDatasetStreamOffset);
    const auto stats = compute_stats(d, r);

    OutputFile tx(o.out);
    write_transactions(tx.stream(out), d);
    tx.close();
    if (!o.relation_out.empty()) {
        OutputFile rel(o.relation_out);
        write_relation_tsv(rel.stream(out), r);
        rel.close();
    }
    if (!o.stats_out.empty()) {
        OutputFile st(o.stats_out);
        write_stats(st.stream(out), stats);
        st.close();
    }
    if (o.out != "-") write_stats(out, stats);
    return kExitOk;
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    std::vector<EstimatorSpec> specs;
    try {
        for (const auto& text : o.estimators) specs.push_back(parse_estimator_spec(text));
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (specs[i].label == specs[j].label) {
                throw UsageError("duplicate estimator label '" + specs[i].label + "'");
            }
        }
    }

    const auto r = load_relation(o.relation);
    const auto d = load_transactions(o.transactions);
    const auto counts = count_pairs(d);
    const auto direction = resolve_direction(o.direction, true);
    const auto denominator = recall_denominator(o.denominator == "relation"
                                                    ? DenominatorMode::relation_size
                                                    : DenominatorMode::observed_right_kinds,
                                                r, counts);

    struct Result {
        std::vector<CandidateRule> ranked;
        RecallCurve curve;
    };
    std::vector<std::future<Result>> jobs;
    for (const auto& spec : specs) {
        jobs.push_back(std::async(std::launch::async, [&, spec] {
            auto ranked = rank_rules(score_rules(counts, spec.config, direction, r));
            auto curve = recall_curve(ranked, r, denominator, spec.label);
            return Result{std::move(ranked), std::move(curve)};
        }));
    }

    std::vector<CurveSummary> summary;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Result result = jobs[i].get();
        const auto& label = specs[i].label;
        OutputFile rules(o.out_prefix + "rules_" + label + ".csv");
        write_rules_csv(rules.stream(out), result.ranked);
        rules.close();
        OutputFile curve(o.out_prefix + "curve_" + label + ".csv");
        write_curve_csv(curve.stream(out), result.curve);
        curve.close();
        summary.push_back({label, curve_auc(result.curve, o.auc_k, TailPolicy::hold_final),
                           final_recall(result.curve)});
    }
    OutputFile summary_file(o.out_prefix + "summary.csv");
    write_summary_csv(summary_file.stream(out), o.auc_k, summary);
    summary_file.close();
    write_summary_csv(out, o.auc_k, summary);
    return kExitOk;
}

int cmd_fit_prior(const FitOptions& o, std::ostream& out) {
    std::vector<double> ratios;
    if (!o.ratios.empty()) {
        auto in = open_input(o.ratios);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            ratios.push_back(parse_ratio(line));
        }
    } else {
        const auto counts = count_pairs(load_transactions(o.transactions));
        if (o.direction == "all") {
            ratios = observed_ratios(counts);
        } else {
            HierarchicalRelation r;
            if (!o.relation.empty()) r = load_relation(o.relation);
            if (o.direction == "typed" && r.empty()) {
                throw UsageError("--direction typed needs --relation");
            }
            EstimatorConfig mle_config;
            mle_config.kind = EstimatorKind::mle;
            const auto dir = o.direction == "typed" ? Direction::typed_child_condition
                                                    : Direction::max_both;
            for (const auto& rule : score_rules(counts, mle_config, dir, r)) {
                ratios.push_back(rule.score);
            }
        }
    }

    std::vector<double> excluded;
    if (!o.no_exclude) {
        try {
            excluded =
                o.exclude.empty() ? default_excluded_ratios() : parse_ratio_list(o.exclude);
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }
    const auto prior = fit_prior_from_ratios(ratios, excluded);
    out << "a=" << format_double(prior.a()) << '\n'
        << "b=" << format_double(prior.b()) << '\n'
        << "retained=" << count_retained_ratios(ratios, excluded) << '\n'
        << "total=" << ratios.size() << '\n';
    return kExitOk;
}

}  // namespace

EstimatorSpec parse_estimator_spec(std::string_view text) {
    const auto colon = text.find(':');
    const std::string kind(text.substr(0, colon));

    EstimatorSpec spec;
    if (kind == "mle") {
        spec.config.kind = EstimatorKind::mle;
    } else if (kind == "laplace") {
        spec.config.kind = EstimatorKind::laplace;
    } else if (kind == "pmean" || kind == "posterior_mean") {
        spec.config.kind = EstimatorKind::posterior_mean;
    } else if (kind == "lb" || kind == "lower_bound") {
        spec.config.kind = EstimatorKind::lower_bound;
    } else if (kind == "cp" || kind == "clopper_pearson") {
        spec.config.kind = EstimatorKind::clopper_pearson;
    } else {
        throw ParseError("unknown estimator '" + kind + "'");
    }

    double a = spec.config.prior.a();
    double b = spec.config.prior.b();
    std::string label;
    if (colon != std::string_view::npos) {
        std::string_view rest = text.substr(colon + 1);
        while (!rest.empty()) {
            const auto comma = rest.find(',');
            const auto item = rest.substr(0, comma);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            const auto eq = item.find('=');
            if (eq == std::string_view::npos) {
                throw ParseError("estimator option '" + std::string(item) + "' lacks '='");
            }
            const auto key = item.substr(0, eq);
            const auto value = item.substr(eq + 1);
            if (key == "alpha") {
                spec.config.alpha = parse_number(value);
            } else if (key == "a") {
                a = parse_number(value);
            } else if (key == "b") {
                b = parse_number(value);
            } else if (key == "minsup") {
                spec.config.minsup = parse_count(value);
            } else if (key == "label") {
                label = value;
            } else {
                throw ParseError("unknown estimator option '" + std::string(key) + "'");
            }
        }
    }
    try {
        spec.config.prior = BetaParams(a, b);
        spec.config.validate();
    } catch (const DomainError& e) {
        throw ParseError("estimator '" + std::string(text) + "': " + e.what());
    }
    spec.label = sanitize_label(label.empty() ? text : label);
    return spec;
}

double parse_ratio(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return parse_number(text);
    const double num = parse_number(text.substr(0, slash));
    const double den = parse_number(text.substr(slash + 1));
    if (den == 0.0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    return num / den;
}

std::vector<double> parse_ratio_list(std::string_view text) {
    std::vector<double> values;
    while (!text.empty()) {
        const auto comma = text.find(',');
        values.push_back(parse_ratio(text.substr(0, comma)));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Conservative conditional-probability estimation via Beta credible bounds"};
    app.require_subcommand(1);

    TableOptions table;
    auto* table_cmd = app.add_subcommand("table", "Write the estimator table as CSV");
    table_cmd->add_option("--n-max", table.n_max, "Largest n")->check(CLI::PositiveNumber);
    table_cmd->add_option("--alpha", table.alpha, "Confidence level")->check(open_unit_interval());
    table_cmd->add_option("--prior-a", table.prior_a, "Prior shape a")->check(CLI::PositiveNumber);
    table_cmd->add_option("--prior-b", table.prior_b, "Prior shape b")->check(CLI::PositiveNumber);
    table_cmd->add_option("--out", table.out, "Output path, '-' for stdout");

    SynthOptions synth;
    auto* synth_cmd = app.add_subcommand("synth", "Sample a transaction dataset");
    synth_cmd->add_option("--relation", synth.relation, "Relation TSV (parent<TAB>child)");
    auto* parents_opt = synth_cmd->add_option("--parents", synth.parents,
                                              "Parents in a synthesized relation")
                            ->check(CLI::PositiveNumber);
    auto* children_opt = synth_cmd->add_option("--children", synth.children,
                                               "Children per parent")
                             ->check(CLI::PositiveNumber);
    auto* shared_opt = synth_cmd->add_option("--shared", synth.shared,
                                             "Fraction of children with a second parent")
                           ->check(CLI::Range(0.0, 1.0));
    parents_opt->excludes("--relation");
    children_opt->excludes("--relation");
    shared_opt->excludes("--relation");
    synth_cmd->add_option("--count", synth.count, "Number of transactions")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--pairs", synth.pairs, "Relation pairs per transaction")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--seed", synth.seed, "Random seed");
    synth_cmd->add_option("--out", synth.out, "Transactions output path")->required();
    synth_cmd->add_option("--relation-out", synth.relation_out, "Write the relation used");
    synth_cmd->add_option("--stats-out", synth.stats_out, "Write dataset statistics");

    EvalOptions eval;
    auto* eval_cmd = app.add_subcommand("eval", "Score, rank and compute recall curves");
    eval_cmd->add_option("--transactions", eval.transactions, "Transactions file")->required();
    eval_cmd->add_option("--relation", eval.relation, "Relation TSV")->required();
    eval_cmd->add_option("--estimator", eval.estimators, "kind[:key=val,...], repeatable")
        ->required();
    eval_cmd->add_option("--direction", eval.direction, "auto, typed or max_both")
        ->check(CLI::IsMember({"auto", "typed", "max_both"}));
    eval_cmd->add_option("--denominator", eval.denominator, "observed or relation")
        ->check(CLI::IsMember({"observed", "relation"}));
    eval_cmd->add_option("--auc-k", eval.auc_k, "Rank cutoff for the summary AUC")
        ->check(CLI::PositiveNumber);
    eval_cmd->add_option("--out-prefix", eval.out_prefix, "Prefix for output files")->required();

    FitOptions fit;
    auto* fit_cmd = app.add_subcommand("fit-prior", "Fit a Beta prior to observed x/n ratios");
    auto* fit_tx = fit_cmd->add_option("--transactions", fit.transactions, "Transactions file");
    fit_cmd->add_option("--relation", fit.relation, "Relation TSV, needed for typed pairs");
    auto* fit_ratios = fit_cmd->add_option("--ratios", fit.ratios,
                                           "File with one ratio (0.25 or 1/4) per line");
    fit_tx->excludes(fit_ratios);
    fit_cmd->add_option("--direction", fit.direction,
                        "Ratios from all ordered pairs (all), typed rules or max_both rules")
        ->check(CLI::IsMember({"all", "typed", "max_both"}));
    auto* exclude_opt = fit_cmd->add_option("--exclude", fit.exclude,
                                            "Comma-separated ratios to ignore");
    fit_cmd->add_flag("--no-exclude", fit.no_exclude, "Keep every ratio")->excludes(exclude_opt);

    try {
        app.parse(argc, argv);
        if (fit_cmd->parsed() && fit.transactions.empty() && fit.ratios.empty()) {
            throw CLI::RequiredError("--transactions or --ratios");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (table_cmd->parsed()) return cmd_table(table, out);
        if (synth_cmd->parsed()) return cmd_synth(synth, out);
        if (eval_cmd->parsed()) return cmd_eval(eval, out);
        return cmd_fit_prior(fit, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace cilb::cli
