#include "cilb/mining.hpp"

#include <algorithm>
#include <charconv>

#include "cilb/errors.hpp"

namespace cilb {

std::uint64_t PairCounts::marginal_of(const std::string& item) const {
    const auto it = marginal.find(item);
    return it == marginal.end() ? 0 : it->second;
}

std::uint64_t PairCounts::joint_of(const std::string& u, const std::string& v) const {
    const auto it = joint.find(u < v ? std::pair{u, v} : std::pair{v, u});
    return it == joint.end() ? 0 : it->second;
}

void PairCounts::merge(const PairCounts& other) {
    for (const auto& [item, c] : other.marginal) marginal[item] += c;
    for (const auto& [key, c] : other.joint) joint[key] += c;
}

PairCounts count_pairs(const TransactionDataset& d) {
    if (d.transactions.empty()) throw DomainError("cannot count pairs of an empty dataset");
    PairCounts counts;
    for (const auto& t : d.transactions) {
        // Transactions are sorted and duplicate-free, so i < j gives an
        // ordered key and each pair is counted once per transaction.
        for (std::size_t i = 0; i < t.size(); ++i) {
            ++counts.marginal[t[i]];
            for (std::size_t j = i + 1; j < t.size(); ++j) ++counts.joint[{t[i], t[j]}];
        }
    }
    return counts;
}

std::vector<CandidateRule> score_rules(const PairCounts& counts, const EstimatorConfig& config,
                                       Direction direction, const HierarchicalRelation& types) {
    config.validate();
    if (direction == Direction::typed_child_condition && types.empty()) {
        throw DomainError("typed scoring needs a relation to tell parents from children");
    }

    auto make_rule = [&](const std::string& a, const std::string& b,
                         std::uint64_t x) -> std::optional<CandidateRule> {
        const FrequencyPair f(counts.marginal_of(b), x);
        const auto score = estimate(config, f);
        if (!score) return std::nullopt;
        return CandidateRule{a, b, f, *score};
    };

    std::vector<CandidateRule> rules;
    for (const auto& [key, x] : counts.joint) {
        const auto& [u, v] = key;
        if (direction == Direction::typed_child_condition) {
            std::optional<CandidateRule> rule;
            if (types.is_parent(u) && types.is_child(v)) {
                rule = make_rule(u, v, x);
            } else if (types.is_child(u) && types.is_parent(v)) {
                rule = make_rule(v, u, x);
            }
            if (rule) rules.push_back(std::move(*rule));
            continue;
        }
        // u < v, so conditioning on u wins ties.
        auto given_u = make_rule(v, u, x);
        auto given_v = make_rule(u, v, x);
        if (given_u && (!given_v || given_u->score >= given_v->score)) {
            rules.push_back(std::move(*given_u));
        } else if (given_v) {
            rules.push_back(std::move(*given_v));
        }
    }
    return rules;
}

std::vector<double> observed_ratios(const PairCounts& counts) {
    std::vector<std::pair<std::pair<std::string, std::string>, double>> keyed;
    keyed.reserve(2 * counts.joint.size());
    for (const auto& [key, x] : counts.joint) {
        const auto& [u, v] = key;
        const auto xd = static_cast<double>(x);
        keyed.push_back({{u, v}, xd / static_cast<double>(counts.marginal_of(u))});
        keyed.push_back({{v, u}, xd / static_cast<double>(counts.marginal_of(v))});
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<double> ratios;
    ratios.reserve(keyed.size());
    for (const auto& [key, ratio] : keyed) ratios.push_back(ratio);
    return ratios;
}

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_rules_csv(std::ostream& out, const std::vector<CandidateRule>& rules) {
    out << "item_b,item_a,n,x,score\n";
    for (const auto& r : rules) {
        out << r.item_b << ',' << r.item_a << ',' << r.counts.n << ',' << r.counts.x << ','
            << format_double(r.score) << '\n';
    }
}

}  // namespace cilb
