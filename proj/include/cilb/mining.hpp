#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "cilb/estimators.hpp"
#include "cilb/synth.hpp"

namespace cilb {

/// Per-transaction occurrence counts. Joint keys are ordered so that
/// first < second.
struct PairCounts {
    std::map<std::string, std::uint64_t> marginal;
    std::map<std::pair<std::string, std::string>, std::uint64_t> joint;

    std::uint64_t marginal_of(const std::string& item) const;
    std::uint64_t joint_of(const std::string& u, const std::string& v) const;

    /// Adds another shard's counts into this one.
    void merge(const PairCounts& other);
};

/// Throws DomainError on an empty dataset.
PairCounts count_pairs(const TransactionDataset& d);

/// Estimated P(item_a | item_b).
struct CandidateRule {
    std::string item_a;  // consequent
    std::string item_b;  // conditioning item
    FrequencyPair counts;
    double score = 0.0;
};

enum class Direction {
    /// One rule per pair, scored in whichever direction scores higher.
    max_both,
    /// Only P(parent | child) for parent/child pairs; other pairs dropped.
    typed_child_condition,
};

/// Scores every co-occurring pair. Minsup is applied to the conditioning
/// marginal; filtered pairs produce no rule. `types` supplies parent and
/// child roles and is required for typed_child_condition.
///
/// In max_both mode a tied score keeps the direction whose conditioning
/// item sorts first.
std::vector<CandidateRule> score_rules(const PairCounts& counts, const EstimatorConfig& config,
                                       Direction direction,
                                       const HierarchicalRelation& types = {});

/// Observed x / n for every co-occurring pair in both conditioning
/// directions, ordered by (item_b, item_a).
std::vector<double> observed_ratios(const PairCounts& counts);

/// CSV `item_b,item_a,n,x,score`, rules in the given order.
void write_rules_csv(std::ostream& out, const std::vector<CandidateRule>& rules);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace cilb
