#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"

namespace latmon {

/// A finite partial order on dense indices 0..size-1 with display labels.
///
/// Both the up-set and down-set of every element are stored as bit rows, so
/// leq() and every closure operation are word-parallel.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Builds a poset from its full order relation; up[i] must hold every j
  /// with i <= j. Throws DuplicateLabel or InvalidRelation.
  static FinitePoset from_relation(std::vector<std::string> labels, std::vector<Bitset> up) {
    const std::size_t n = labels.size();
    if (up.size() != n) throw InvalidRelation("relation has " + std::to_string(up.size()) + " rows for " +
                                              std::to_string(n) + " labels");
    {
      std::unordered_set<std::string> seen;
      for (const auto& l : labels)
        if (!seen.insert(l).second) throw DuplicateLabel("duplicate label '" + l + "'");
    }
    FinitePoset p;
    p.labels_ = std::move(labels);
    p.up_ = std::move(up);
    p.down_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (p.up_[i].size() != n) throw InvalidRelation("relation row has the wrong width");
      if (!p.up_[i].test(i)) throw InvalidRelation("not reflexive at '" + p.labels_[i] + "'");
      p.up_[i].for_each([&](Elem j) { p.down_[j].set(i); });
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j)
        if (p.up_[i].test(j) && p.up_[j].test(i))
          throw InvalidRelation("not antisymmetric: '" + p.labels_[i] + "' and '" + p.labels_[j] + "'");
      // transitivity: every j above i must have its up-set inside up(i)
      bool ok = true;
      p.up_[i].for_each([&](Elem j) { ok = ok && p.up_[j].is_subset_of(p.up_[i]); });
      if (!ok) throw InvalidRelation("not transitive above '" + p.labels_[i] + "'");
    }
    return p;
  }

  std::size_t size() const noexcept { return labels_.size(); }
  bool leq(Elem x, Elem y) const noexcept { return up_[x].test(y); }
  bool less(Elem x, Elem y) const noexcept { return x != y && leq(x, y); }
  const Bitset& up(Elem x) const noexcept { return up_[x]; }
  const Bitset& down(Elem x) const noexcept { return down_[x]; }

  const std::string& label(Elem x) const noexcept { return labels_[x]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::optional<Elem> find(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<Elem>(i);
    return std::nullopt;
  }

  /// Number of pairs (x, y) with x <= y, reflexive pairs included.
  std::size_t related_pairs() const {
    std::size_t n = 0;
    for (const auto& row : up_) n += row.count();
    return n;
  }

  /// Cover pairs (x, y): x < y with nothing strictly between, in index order.
  std::vector<std::pair<Elem, Elem>> covers() const {
    std::vector<std::pair<Elem, Elem>> out;
    const std::size_t n = size();
    for (std::size_t x = 0; x < n; ++x) {
      Bitset strict_up = up_[x];
      strict_up.reset(x);
      strict_up.for_each([&](Elem y) {
        Bitset between = strict_up & down_[y];
        between.reset(y);
        if (between.none()) out.emplace_back(static_cast<Elem>(x), y);
      });
    }
    return out;
  }

  Bitset down_closure(const Bitset& s) const {
    Bitset out(size());
    s.for_each([&](Elem x) { out |= down_[x]; });
    return out;
  }

  Bitset up_closure(const Bitset& s) const {
    Bitset out(size());
    s.for_each([&](Elem x) { out |= up_[x]; });
    return out;
  }

  bool is_down_set(const Bitset& s) const {
    bool ok = true;
    s.for_each([&](Elem x) { ok = ok && down_[x].is_subset_of(s); });
    return ok;
  }

  /// Deterministic linear extension: repeatedly take the lowest-index minimal
  /// element of what remains.
  std::vector<Elem> linear_extension() const {
    const std::size_t n = size();
    std::vector<Elem> order;
    order.reserve(n);
    Bitset placed(n);
    while (order.size() < n) {
      for (std::size_t x = 0; x < n; ++x) {
        if (placed.test(x)) continue;
        Bitset below = down_[x];
        below.reset(x);
        if (below.is_subset_of(placed)) {
          placed.set(x);
          order.push_back(static_cast<Elem>(x));
          break;
        }
      }
    }
    return order;
  }

  /// True when x <= y implies x's index does not exceed y's.
  bool indexed_by_linear_extension() const {
    for (std::size_t x = 0; x < size(); ++x)
      if (down_[x].elements().back() != x) return false;
    return true;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Bitset> up_;
  std::vector<Bitset> down_;
};

/// Reflexive-transitive closure of the given cover pairs.
inline FinitePoset poset_from_covers(const std::vector<std::string>& labels,
                                     const std::vector<std::pair<std::string, std::string>>& covers) {
  const std::size_t n = labels.size();
  {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels)
      if (!seen.insert(l).second) throw DuplicateLabel("duplicate label '" + l + "'");
  }
  auto index_of = [&](const std::string& l) -> std::size_t {
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) throw UnknownLabel("unknown label '" + l + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) up[i].set(i);
  for (const auto& [lo, hi] : covers) {
    const auto a = index_of(lo), b = index_of(hi);
    if (a == b) throw CycleDetected("self cover on '" + lo + "'");
    up[a].set(b);
  }
  // Warshall on bit rows
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (up[i].test(k)) up[i] |= up[k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (up[i].test(j) && up[j].test(i))
        throw CycleDetected("cycle through '" + labels[i] + "' and '" + labels[j] + "'");
  return FinitePoset::from_relation(labels, std::move(up));
}

namespace detail {

// Level-by-level DFS over down-sets of a poset indexed by a linear extension.
// With that indexing every down-set listed in increasing order has down-set
// prefixes, so extending by a larger index whose strict lower set is already
// present reaches each down-set exactly once, in lexicographic order.
template <class Visit>
bool down_sets_of_size(const std::vector<Bitset>& strict_down, std::size_t k, std::size_t start, Bitset& cur,
                       std::size_t depth, Visit& visit) {
  const std::size_t n = strict_down.size();
  if (depth == k) return visit(static_cast<const Bitset&>(cur));
  for (std::size_t i = start; i + (k - depth) <= n; ++i) {
    if (!strict_down[i].is_subset_of(cur)) continue;
    cur.set(i);
    const bool go_on = down_sets_of_size(strict_down, k, i + 1, cur, depth + 1, visit);
    cur.reset(i);
    if (!go_on) return false;
  }
  return true;
}

}  // namespace detail

/// Visits every down-set of p in canonical subset order (cardinality, then
/// lexicographic). visit(const Bitset&) returns false to stop early.
///
/// Lazy when p is indexed by a linear extension (as every carrier built by
/// apply_object is); otherwise all down-sets are materialized and sorted.
template <class Visit>
void for_each_down_set(const FinitePoset& p, Visit&& visit) {
  const std::size_t n = p.size();
  if (p.indexed_by_linear_extension()) {
    std::vector<Bitset> strict_down(n);
    for (std::size_t i = 0; i < n; ++i) {
      strict_down[i] = p.down(static_cast<Elem>(i));
      strict_down[i].reset(i);
    }
    Bitset cur(n);
    for (std::size_t k = 0; k <= n; ++k)
      if (!detail::down_sets_of_size(strict_down, k, 0, cur, 0, visit)) return;
    return;
  }
  // relabel along a linear extension, enumerate, map back, sort
  const auto ext = p.linear_extension();
  std::vector<Bitset> strict_down(n, Bitset(n));
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[ext[i]] = i;
  for (std::size_t i = 0; i < n; ++i)
    p.down(ext[i]).for_each([&](Elem y) {
      if (y != ext[i]) strict_down[i].set(pos[y]);
    });
  std::vector<Bitset> all;
  Bitset cur(n);
  auto collect = [&](const Bitset& s) {
    Bitset mapped(n);
    s.for_each([&](Elem i) { mapped.set(ext[i]); });
    all.push_back(std::move(mapped));
    return true;
  };
  for (std::size_t k = 0; k <= n; ++k) detail::down_sets_of_size(strict_down, k, 0, cur, 0, collect);
  std::sort(all.begin(), all.end(), canonical_less);
  for (const auto& s : all)
    if (!visit(s)) return;
}

/// All down-sets in canonical order. Throws BudgetExceeded past `budget`.
inline std::vector<Bitset> down_sets(const FinitePoset& p, std::size_t budget) {
  std::vector<Bitset> out;
  bool over = false;
  for_each_down_set(p, [&](const Bitset& s) {
    if (out.size() >= budget) {
      over = true;
      return false;
    }
    out.push_back(s);
    return true;
  });
  if (over) throw BudgetExceeded("more than " + std::to_string(budget) + " down-sets", budget + 1);
  return out;
}

}  // namespace latmon
