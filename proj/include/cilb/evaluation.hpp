#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "cilb/mining.hpp"
#include "cilb/synth.hpp"

namespace cilb {

/// Sorts by descending score, then descending x, then ascending
/// (item_b, item_a). The order is total, so results never depend on the
/// input order. MLE produces many ties at small n, which makes the
/// tie rule matter for comparisons.
std::vector<CandidateRule> rank_rules(std::vector<CandidateRule> rules);

struct CurvePoint {
    std::uint64_t rank = 0;
    std::uint64_t hits = 0;
    double recall = 0.0;
    double precision = 0.0;
};

struct RecallCurve {
    std::vector<CurvePoint> points;
    std::uint64_t denominator = 0;
    std::string label;
};

enum class DenominatorMode {
    relation_size,         // |R|
    observed_right_kinds,  // relation pairs that co-occur at least once
};

std::uint64_t recall_denominator(DenominatorMode mode, const HierarchicalRelation& r,
                                 const PairCounts& counts);

/// Recall and precision after each rank. A rank is a hit when its pair
/// belongs to `r` in either orientation; a pair repeated later in the
/// list is not counted again. Recall is 0 when the denominator is 0.
RecallCurve recall_curve(std::span<const CandidateRule> ranked, const HierarchicalRelation& r,
                         std::uint64_t denominator, std::string label = {});

enum class TailPolicy {
    strict,      // max_rank past the end of the curve is an error
    hold_final,  // a shorter list keeps its final recall for the missing ranks
};

/// Mean recall over ranks 1..max_rank. With TailPolicy::strict throws
/// std::out_of_range when max_rank is 0 or exceeds the curve length.
double curve_auc(const RecallCurve& c, std::size_t max_rank,
                 TailPolicy policy = TailPolicy::strict);

double final_recall(const RecallCurve& c);

/// CSV `rank,hits,recall,precision`.
void write_curve_csv(std::ostream& out, const RecallCurve& c);

struct CurveSummary {
    std::string label;
    double auc = 0.0;
    double final_recall = 0.0;
};

/// CSV `label,auc@<k>,final_recall`.
void write_summary_csv(std::ostream& out, std::size_t k, std::span<const CurveSummary> rows);

}  // namespace cilb
