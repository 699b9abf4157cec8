#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cilb {

struct RelationPair {
    std::string parent;
    std::string child;

    friend auto operator<=>(const RelationPair&, const RelationPair&) = default;
};

/// Ground-truth parent/child relation. Pairs keep insertion order (which
/// fixes how seeded sampling maps onto pairs); duplicates are dropped.
/// Parent and child names must be disjoint and free of whitespace.
class HierarchicalRelation {
public:
    HierarchicalRelation() = default;
    explicit HierarchicalRelation(std::span<const RelationPair> pairs);

    /// Returns false if the pair was already present.
    bool add(const std::string& parent, const std::string& child);

    std::span<const RelationPair> pairs() const noexcept { return pairs_; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

    /// Order-insensitive membership: true for (parent, child) or (child, parent).
    bool contains(const std::string& u, const std::string& v) const;

    bool is_parent(const std::string& name) const { return parents_.contains(name); }
    bool is_child(const std::string& name) const { return children_.contains(name); }

private:
    std::vector<RelationPair> pairs_;
    std::set<std::pair<std::string, std::string>> index_;
    std::set<std::string> parents_;
    std::set<std::string> children_;
};

/// A transaction is a sorted set of item names.
using Transaction = std::vector<std::string>;

struct TransactionDataset {
    std::vector<Transaction> transactions;
    std::uint64_t seed = 0;
    /// Indices into the relation's pairs drawn for each transaction. Empty
    /// for datasets read back from disk.
    std::vector<std::vector<std::size_t>> draws;
};

struct DatasetStats {
    std::uint64_t transaction_count = 0;
    std::uint64_t candidate_pair_kinds = 0;
    std::uint64_t candidate_pair_occurrences = 0;
    std::uint64_t right_pair_kinds = 0;
    std::uint64_t right_pair_occurrences = 0;

    friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

/// Each transaction is the union of `pairs_per_transaction` pairs drawn
/// uniformly with replacement from `r`. Fully determined by `seed`.
/// Throws EmptyRelationError when `r` has no pairs.
TransactionDataset generate_dataset(const HierarchicalRelation& r,
                                    std::uint64_t transaction_count,
                                    std::uint64_t pairs_per_transaction, std::uint64_t seed);

/// Parents P0.. each own `children_per_parent` fresh children C0..; then
/// round(shared_child_fraction * child count) randomly chosen children are
/// attached to one more, different, parent.
HierarchicalRelation synthesize_relation(std::uint64_t parent_count,
                                         std::uint64_t children_per_parent,
                                         double shared_child_fraction, std::uint64_t seed);

/// Candidate pairs are all unordered item pairs inside a transaction;
/// right pairs are the candidates that belong to `r`.
DatasetStats compute_stats(const TransactionDataset& d, const HierarchicalRelation& r);

// File formats. Relation: `parent<TAB>child` per line. Transactions: one
// per line, items separated by single spaces in lexicographic order.
// Stats: key=value lines.
HierarchicalRelation read_relation_tsv(std::istream& in);
void write_relation_tsv(std::ostream& out, const HierarchicalRelation& r);
TransactionDataset read_transactions(std::istream& in);
void write_transactions(std::ostream& out, const TransactionDataset& d);
void write_stats(std::ostream& out, const DatasetStats& s);

}  // namespace cilb
