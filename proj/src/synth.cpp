#include "cilb/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "cilb/errors.hpp"

namespace cilb {

namespace {

// Unbiased integer in [0, bound). std::uniform_int_distribution is not
// specified bit-for-bit across standard libraries, so outputs would not
// be reproducible between toolchains.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = kMax - kMax % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

bool valid_name(const std::string& name) {
    return !name.empty() && std::none_of(name.begin(), name.end(), [](unsigned char c) {
        return std::isspace(c) != 0;
    });
}

std::pair<std::string, std::string> ordered(const std::string& u, const std::string& v) {
    return u < v ? std::pair{u, v} : std::pair{v, u};
}

}  // namespace

HierarchicalRelation::HierarchicalRelation(std::span<const RelationPair> pairs) {
    for (const auto& p : pairs) add(p.parent, p.child);
}

bool HierarchicalRelation::add(const std::string& parent, const std::string& child) {
    if (!valid_name(parent) || !valid_name(child)) {
        throw ParseError("relation names must be non-empty and contain no whitespace: '" +
                         parent + "', '" + child + "'");
    }
    if (children_.contains(parent) || parents_.contains(child)) {
        throw ParseError("name used both as parent and child: '" + parent + "', '" + child +
                         "'");
    }
    if (!index_.emplace(parent, child).second) return false;
    pairs_.push_back({parent, child});
    parents_.insert(parent);
    children_.insert(child);
    return true;
}

bool HierarchicalRelation::contains(const std::string& u, const std::string& v) const {
    return index_.contains({u, v}) || index_.contains({v, u});
}

TransactionDataset generate_dataset(const HierarchicalRelation& r,
                                    std::uint64_t transaction_count,
                                    std::uint64_t pairs_per_transaction, std::uint64_t seed) {
    if (r.empty()) throw EmptyRelationError("cannot sample transactions from an empty relation");
    if (pairs_per_transaction == 0) throw DomainError("pairs_per_transaction must be positive");

    std::mt19937_64 rng(seed);
    TransactionDataset d;
    d.seed = seed;
    d.transactions.reserve(transaction_count);
    d.draws.reserve(transaction_count);
    const auto pairs = r.pairs();
    for (std::uint64_t k = 0; k < transaction_count; ++k) {
        Transaction t;
        std::vector<std::size_t> drawn;
        for (std::uint64_t j = 0; j < pairs_per_transaction; ++j) {
            const auto idx = static_cast<std::size_t>(draw_below(rng, pairs.size()));
            drawn.push_back(idx);
            t.push_back(pairs[idx].parent);
            t.push_back(pairs[idx].child);
        }
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        d.transactions.push_back(std::move(t));
        d.draws.push_back(std::move(drawn));
    }
    return d;
}

HierarchicalRelation synthesize_relation(std::uint64_t parent_count,
                                         std::uint64_t children_per_parent,
                                         double shared_child_fraction, std::uint64_t seed) {
    if (parent_count == 0 || children_per_parent == 0) {
        throw DomainError("parent_count and children_per_parent must be positive");
    }
    if (!(shared_child_fraction >= 0.0 && shared_child_fraction <= 1.0)) {
        throw DomainError("shared_child_fraction must lie in [0, 1]");
    }

    HierarchicalRelation r;
    const std::uint64_t child_count = parent_count * children_per_parent;
    for (std::uint64_t c = 0; c < child_count; ++c) {
        r.add("P" + std::to_string(c / children_per_parent), "C" + std::to_string(c));
    }
    if (parent_count < 2) return r;

    std::mt19937_64 rng(seed);
    const auto shared = static_cast<std::uint64_t>(
        std::llround(shared_child_fraction * static_cast<double>(child_count)));
    std::vector<std::uint64_t> order(child_count);
    std::iota(order.begin(), order.end(), 0);
    // Partial Fisher-Yates: the first `shared` slots become a uniform sample.
    for (std::uint64_t i = 0; i < shared; ++i) {
        std::swap(order[i], order[i + draw_below(rng, child_count - i)]);
        const std::uint64_t child = order[i];
        const std::uint64_t home = child / children_per_parent;
        std::uint64_t other = draw_below(rng, parent_count - 1);
        if (other >= home) ++other;
        r.add("P" + std::to_string(other), "C" + std::to_string(child));
    }
    return r;
}

DatasetStats compute_stats(const TransactionDataset& d, const HierarchicalRelation& r) {
    DatasetStats s;
    s.transaction_count = d.transactions.size();
    std::set<std::pair<std::string, std::string>> kinds;
    std::set<std::pair<std::string, std::string>> right_kinds;
    for (const auto& t : d.transactions) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                auto key = ordered(t[i], t[j]);
                ++s.candidate_pair_occurrences;
                if (r.contains(t[i], t[j])) {
                    ++s.right_pair_occurrences;
                    right_kinds.insert(key);
                }
                kinds.insert(std::move(key));
            }
        }
    }
    s.candidate_pair_kinds = kinds.size();
    s.right_pair_kinds = right_kinds.size();
    return s;
}

HierarchicalRelation read_relation_tsv(std::istream& in) {
    HierarchicalRelation r;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw ParseError("relation line " + std::to_string(line_no) +
                             ": expected exactly two tab-separated columns");
        }
        r.add(line.substr(0, tab), line.substr(tab + 1));
    }
    return r;
}

void write_relation_tsv(std::ostream& out, const HierarchicalRelation& r) {
    for (const auto& p : r.pairs()) out << p.parent << '\t' << p.child << '\n';
}

TransactionDataset read_transactions(std::istream& in) {
    TransactionDataset d;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        Transaction t;
        for (std::string item; fields >> item;) t.push_back(std::move(item));
        if (t.empty()) continue;
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        d.transactions.push_back(std::move(t));
    }
    return d;
}

void write_transactions(std::ostream& out, const TransactionDataset& d) {
    for (const auto& t : d.transactions) {
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) out << ' ';
            out << t[i];
        }
        out << '\n';
    }
}

void write_stats(std::ostream& out, const DatasetStats& s) {
    out << "transactions=" << s.transaction_count << '\n'
        << "candidate_pair_kinds=" << s.candidate_pair_kinds << '\n'
        << "candidate_pair_occurrences=" << s.candidate_pair_occurrences << '\n'
        << "right_pair_kinds=" << s.right_pair_kinds << '\n'
        << "right_pair_occurrences=" << s.right_pair_occurrences << '\n';
}

}  // namespace cilb
