#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/lattice.hpp"
#include "latmon/monad.hpp"
#include "latmon/poset.hpp"

namespace latmon {

enum class CarrierKind { Poset, MLat, Lattice, DLat };

inline std::string_view to_string(CarrierKind k) {
  switch (k) {
    case CarrierKind::Poset: return "poset";
    case CarrierKind::MLat: return "mlat";
    case CarrierKind::Lattice: return "lattice";
    case CarrierKind::DLat: return "dlat";
  }
  return "?";
}

inline std::optional<CarrierKind> carrier_kind_from(std::string_view s) {
  if (s == "poset") return CarrierKind::Poset;
  if (s == "mlat") return CarrierKind::MLat;
  if (s == "lattice") return CarrierKind::Lattice;
  if (s == "dlat") return CarrierKind::DLat;
  return std::nullopt;
}

enum class Provenance { Named, Enumerated };

struct CorpusEntry {
  std::string name;
  FinitePoset poset;
  /// Present once the entry is known to be a lattice.
  LatticePtr lattice;
  Provenance provenance = Provenance::Named;
};

/// Lattice tables for p when p has them, else nullptr. A finite
/// meet-semilattice with top is a lattice, so MLat and Lattice coincide here.
inline LatticePtr try_lattice(const FinitePoset& p) {
  try {
    return lattice_from_poset(p);
  } catch (const NotALattice&) {
    return nullptr;
  }
}

inline bool admits(const CorpusEntry& e, CarrierKind kind) {
  if (kind == CarrierKind::Poset) return true;
  const LatticePtr l = e.lattice ? e.lattice : try_lattice(e.poset);
  if (!l) return false;
  return kind != CarrierKind::DLat || is_distributive(*l).holds;
}

/// Keeps the entries admitting `kind`, with lattice tables attached for every
/// kind but Poset.
inline std::vector<CorpusEntry> filter_kind(std::vector<CorpusEntry> entries, CarrierKind kind) {
  std::vector<CorpusEntry> out;
  for (auto& e : entries) {
    if (kind != CarrierKind::Poset && !e.lattice) e.lattice = try_lattice(e.poset);
    if (admits(e, kind)) out.push_back(std::move(e));
  }
  return out;
}

inline FinitePoset chain_poset(std::size_t n, std::vector<std::string> labels = {}) {
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> covers;
  for (std::size_t i = 0; i + 1 < n; ++i) covers.emplace_back(labels[i], labels[i + 1]);
  return poset_from_covers(labels, covers);
}

inline LatticePtr chain(std::size_t n) { return lattice_from_poset(chain_poset(n)); }

/// The 3-chain labelled 0 < m < 1.
inline LatticePtr chain3() { return lattice_from_poset(chain_poset(3, {"0", "m", "1"})); }

inline LatticePtr diamond() {
  return lattice_from_poset(poset_from_covers({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}));
}

inline LatticePtr cube() {
  return lattice_from_poset(poset_from_covers(
      {"0", "x", "y", "z", "xy", "xz", "yz", "1"},
      {{"0", "x"}, {"0", "y"}, {"0", "z"}, {"x", "xy"}, {"y", "xy"}, {"x", "xz"}, {"z", "xz"}, {"y", "yz"},
       {"z", "yz"}, {"xy", "1"}, {"xz", "1"}, {"yz", "1"}}));
}

inline LatticePtr m3() {
  return lattice_from_poset(poset_from_covers(
      {"0", "a", "b", "c", "1"}, {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}}));
}

/// 0 < a < b < 1 and 0 < c < 1.
inline LatticePtr n5() {
  return lattice_from_poset(
      poset_from_covers({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}}));
}

/// B2 with a new bottom (1+B2) or top (B2+1), and with two of them.
inline LatticePtr diamond_stack(std::size_t below, std::size_t above) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  std::string last;
  for (std::size_t i = 0; i < below; ++i) {
    labels.push_back("u" + std::to_string(i));
    if (!last.empty()) covers.emplace_back(last, labels.back());
    last = labels.back();
  }
  for (const char* l : {"0", "a", "b", "1"}) labels.push_back(l);
  if (!last.empty()) covers.emplace_back(last, "0");
  for (auto [lo, hi] : {std::pair{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}) covers.emplace_back(lo, hi);
  last = "1";
  for (std::size_t i = 0; i < above; ++i) {
    labels.push_back("v" + std::to_string(i));
    covers.emplace_back(last, labels.back());
    last = labels.back();
  }
  return lattice_from_poset(poset_from_covers(labels, covers));
}

/// The product of a 2-chain and a 3-chain, elements labelled ij.
inline LatticePtr grid23() {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  auto name = [](int i, int j) { return std::to_string(i) + std::to_string(j); };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) {
      labels.push_back(name(i, j));
      if (i + 1 < 2) covers.emplace_back(name(i, j), name(i + 1, j));
      if (j + 1 < 3) covers.emplace_back(name(i, j), name(i, j + 1));
    }
  return lattice_from_poset(poset_from_covers(labels, covers));
}

inline std::vector<CorpusEntry> named_instances() {
  std::vector<CorpusEntry> out;
  auto add = [&](std::string name, LatticePtr l) {
    out.push_back({std::move(name), l->order(), l, Provenance::Named});
  };
  for (std::size_t n = 1; n <= 6; ++n) add("C" + std::to_string(n), n == 3 ? chain3() : chain(n));
  add("B2", diamond());
  add("B3", cube());
  add("M3", m3());
  add("N5", n5());
  add("DB2", apply_object(MonadInstance::downset(), diamond())->total);
  add("1+B2", diamond_stack(1, 0));
  add("B2+1", diamond_stack(0, 1));
  add("1+1+B2", diamond_stack(2, 0));
  add("B2+1+1", diamond_stack(0, 2));
  add("C2xC3", grid23());
  return out;
}

namespace detail {

// Order-relation bits under the relabelling i -> perm[i]: first every
// "backward" pair (i > j), then every forward pair. Minimizing this key
// zeroes the backward bits whenever possible, so the canonical labelling is a
// linear extension.
inline std::vector<bool> relation_key(const FinitePoset& p, const std::vector<Elem>& perm) {
  const std::size_t n = p.size();
  std::vector<bool> key;
  key.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) key.push_back(p.leq(perm[i], perm[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) key.push_back(p.leq(perm[i], perm[j]));
  return key;
}

}  // namespace detail

/// Canonical form: the relabelling with the minimum relation key over all
/// permutations, labelled 0..n-1. Meant for n <= 7.
inline std::pair<std::vector<bool>, FinitePoset> canonical_form(const FinitePoset& p) {
  const std::size_t n = p.size();
  std::vector<Elem> perm(n), best;
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::vector<bool> best_key;
  do {
    auto key = detail::relation_key(p, perm);
    if (best.empty() || key < best_key) {
      best_key = std::move(key);
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::string> labels;
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      if (p.leq(best[i], best[j])) up[i].set(j);
  }
  return {best_key, FinitePoset::from_relation(std::move(labels), std::move(up))};
}

/// All posets on n unlabelled elements up to isomorphism, in increasing
/// canonical-key order. Throws PreconditionViolated for n > 5.
inline std::vector<CorpusEntry> enumerate_posets(std::size_t n) {
  if (n > 5) throw PreconditionViolated("enumerate_posets supports n <= 5");
  // every poset has a labelling by a linear extension, so upper-triangular
  // relations reach every isomorphism class
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<std::pair<std::vector<bool>, FinitePoset>> found;
  for (std::size_t mask = 0; mask < (std::size_t{1} << pairs.size()); ++mask) {
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) up[i].set(i);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask >> k & 1) up[pairs[k].first].set(pairs[k].second);
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      up[i].for_each([&](Elem j) { transitive = transitive && up[j].is_subset_of(up[i]); });
    if (!transitive) continue;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    auto canon = canonical_form(FinitePoset::from_relation(std::move(labels), std::move(up)));
    const bool seen = std::any_of(found.begin(), found.end(), [&](const auto& f) { return f.first == canon.first; });
    if (!seen) found.push_back(std::move(canon));
  }
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < found.size(); ++i)
    out.push_back({"P" + std::to_string(n) + "_" + std::to_string(i), std::move(found[i].second), nullptr,
                   Provenance::Enumerated});
  return out;
}

/// All lattices on n elements up to isomorphism (n <= 7): a bottom and a top
/// around each poset on n - 2 elements that yields a lattice.
inline std::vector<CorpusEntry> enumerate_lattices(std::size_t n) {
  if (n == 0 || n > 7) throw PreconditionViolated("enumerate_lattices supports 1 <= n <= 7");
  std::vector<CorpusEntry> out;
  if (n == 1) {
    out.push_back({"L1_0", chain_poset(1), chain(1), Provenance::Enumerated});
    return out;
  }
  for (const auto& inner : enumerate_posets(n - 2)) {
    // index 0 is the new bottom, n - 1 the new top, inner elements shift by one
    std::vector<std::string> labels;
    std::vector<Bitset> up(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    up[0] = Bitset::full(n);
    up[n - 1].set(n - 1);
    for (std::size_t i = 0; i + 2 < n; ++i) {
      up[i + 1].set(n - 1);
      inner.poset.up(static_cast<Elem>(i)).for_each([&](Elem j) { up[i + 1].set(j + 1); });
    }
    auto p = FinitePoset::from_relation(std::move(labels), std::move(up));
    if (auto l = try_lattice(p))
      out.push_back({"L" + std::to_string(n) + "_" + std::to_string(out.size()), std::move(p), l,
                     Provenance::Enumerated});
  }
  return out;
}

/// Every lattice on at most `max_size` elements, named after the matching
/// named instance when there is one, followed by the named instances that
/// are larger (B3). Ordered by size, then enumeration order.
inline std::vector<CorpusEntry> standard_corpus(std::size_t max_size = 6) {
  auto named = named_instances();
  std::vector<bool> used(named.size(), false);
  std::vector<CorpusEntry> out;
  for (std::size_t n = 1; n <= max_size; ++n)
    for (auto& e : enumerate_lattices(n)) {
      for (std::size_t k = 0; k < named.size(); ++k) {
        if (used[k] || named[k].poset.size() != n || !are_isomorphic(named[k].poset, e.poset)) continue;
        e = named[k];
        used[k] = true;
        break;
      }
      out.push_back(std::move(e));
    }
  for (std::size_t k = 0; k < named.size(); ++k)
    if (!used[k] && named[k].poset.size() > max_size) out.push_back(named[k]);
  return out;
}

/// Lattices of the corpus on which the monad is defined.
inline std::vector<CorpusEntry> monad_corpus(MonadInstance t, std::size_t max_size = 6) {
  return filter_kind(standard_corpus(max_size), t.kind == MonadKind::Downset ? CarrierKind::MLat : CarrierKind::DLat);
}

}  // namespace latmon
