#include "cilb/evaluation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace cilb {

std::vector<CandidateRule> rank_rules(std::vector<CandidateRule> rules) {
    std::sort(rules.begin(), rules.end(), [](const CandidateRule& l, const CandidateRule& r) {
        if (l.score != r.score) return l.score > r.score;
        if (l.counts.x != r.counts.x) return l.counts.x > r.counts.x;
        return std::tie(l.item_b, l.item_a) < std::tie(r.item_b, r.item_a);
    });
    return rules;
}

std::uint64_t recall_denominator(DenominatorMode mode, const HierarchicalRelation& r,
                                 const PairCounts& counts) {
    if (mode == DenominatorMode::relation_size) return r.size();
    std::uint64_t observed = 0;
    for (const auto& p : r.pairs()) {
        if (counts.joint_of(p.parent, p.child) > 0) ++observed;
    }
    return observed;
}

RecallCurve recall_curve(std::span<const CandidateRule> ranked, const HierarchicalRelation& r,
                         std::uint64_t denominator, std::string label) {
    RecallCurve curve;
    curve.denominator = denominator;
    curve.label = std::move(label);
    curve.points.reserve(ranked.size());

    std::set<std::pair<std::string, std::string>> seen;
    std::uint64_t hits = 0;
    std::uint64_t rank = 0;
    for (const auto& rule : ranked) {
        ++rank;
        const auto& [u, v] = std::minmax(rule.item_a, rule.item_b);
        if (r.contains(u, v) && seen.emplace(u, v).second) ++hits;
        const double recall =
            denominator == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(denominator);
        curve.points.push_back(
            {rank, hits, recall, static_cast<double>(hits) / static_cast<double>(rank)});
    }
    return curve;
}

double curve_auc(const RecallCurve& c, std::size_t max_rank, TailPolicy policy) {
    if (max_rank == 0) throw std::out_of_range("max_rank must be positive");
    if (policy == TailPolicy::strict && max_rank > c.points.size()) {
        throw std::out_of_range("max_rank " + std::to_string(max_rank) +
                                " exceeds curve length " + std::to_string(c.points.size()));
    }
    const std::size_t covered = std::min(max_rank, c.points.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < covered; ++i) sum += c.points[i].recall;
    sum += static_cast<double>(max_rank - covered) * final_recall(c);
    return sum / static_cast<double>(max_rank);
}

double final_recall(const RecallCurve& c) {
    return c.points.empty() ? 0.0 : c.points.back().recall;
}

void write_curve_csv(std::ostream& out, const RecallCurve& c) {
    out << "rank,hits,recall,precision\n";
    for (const auto& p : c.points) {
        out << p.rank << ',' << p.hits << ',' << format_double(p.recall) << ','
            << format_double(p.precision) << '\n';
    }
}

void write_summary_csv(std::ostream& out, std::size_t k, std::span<const CurveSummary> rows) {
    out << "label,auc@" << k << ",final_recall\n";
    for (const auto& row : rows) {
        out << row.label << ',' << format_double(row.auc) << ','
            << format_double(row.final_recall) << '\n';
    }
}

}  // namespace cilb
