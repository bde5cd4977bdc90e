#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/poset.hpp"

namespace latmon {

/// Carriers above this size are refused: meet and join are stored as full
/// tables.
inline constexpr std::size_t kMaxTabulatedCarrier = 4096;

/// A finite bounded lattice with precomputed meet and join tables.
///
/// A finite meet-semilattice with a top already has every join (the meet of
/// the upper bounds), so one type serves meet-semilattices, lattices and
/// distributive lattices alike; which operations a map must preserve is
/// decided by the Category tag on the Hom, not by the carrier.
class Lattice {
 public:
  /// Throws NotALattice with the first pair (in index order) lacking a meet
  /// or a join.
  static Lattice from_poset(FinitePoset p) {
    const std::size_t n = p.size();
    if (n == 0) throw NotALattice("empty poset has no top", std::nullopt);
    if (n > kMaxTabulatedCarrier)
      throw BudgetExceeded("carrier of " + std::to_string(n) + " elements is too large to tabulate", n);
    Lattice l;
    l.meet_.assign(n * n, 0);
    l.join_.assign(n * n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x; y < n; ++y) {
        const auto ex = static_cast<Elem>(x), ey = static_cast<Elem>(y);
        const auto m = greatest_in(p, p.down(ex) & p.down(ey));
        const auto j = least_in(p, p.up(ex) & p.up(ey));
        if (!m) throw NotALattice("'" + p.label(ex) + "' and '" + p.label(ey) + "' have no meet", std::pair{x, y});
        if (!j) throw NotALattice("'" + p.label(ex) + "' and '" + p.label(ey) + "' have no join", std::pair{x, y});
        l.meet_[x * n + y] = l.meet_[y * n + x] = *m;
        l.join_[x * n + y] = l.join_[y * n + x] = *j;
      }
    }
    const auto all = Bitset::full(n);
    l.top_ = *greatest_in(p, all);
    l.bottom_ = *least_in(p, all);
    l.order_ = std::move(p);
    return l;
  }

  const FinitePoset& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }
  bool leq(Elem x, Elem y) const noexcept { return order_.leq(x, y); }
  Elem meet(Elem x, Elem y) const noexcept { return meet_[x * size() + y]; }
  Elem join(Elem x, Elem y) const noexcept { return join_[x * size() + y]; }
  Elem top() const noexcept { return top_; }
  Elem bottom() const noexcept { return bottom_; }
  const std::string& label(Elem x) const noexcept { return order_.label(x); }
  const std::vector<std::string>& labels() const noexcept { return order_.labels(); }

  /// Join of a subset; the empty join is the bottom.
  Elem join_of(const Bitset& s) const {
    Elem acc = bottom_;
    s.for_each([&](Elem x) { acc = join(acc, x); });
    return acc;
  }
  /// Meet of a subset; the empty meet is the top.
  Elem meet_of(const Bitset& s) const {
    Elem acc = top_;
    s.for_each([&](Elem x) { acc = meet(acc, x); });
    return acc;
  }

  /// Join-irreducible elements: exactly one lower cover (so the bottom is
  /// excluded).
  Bitset join_irreducibles() const {
    Bitset out(size());
    std::vector<std::size_t> lower_covers(size(), 0);
    for (const auto& [lo, hi] : order_.covers()) ++lower_covers[hi];
    for (std::size_t x = 0; x < size(); ++x)
      if (lower_covers[x] == 1) out.set(x);
    return out;
  }

 private:
  // greatest element of s, if any (lowest index wins, though it is unique)
  static std::optional<Elem> greatest_in(const FinitePoset& p, const Bitset& s) {
    std::optional<Elem> out;
    s.for_each([&](Elem z) {
      if (!out && s.is_subset_of(p.down(z))) out = z;
    });
    return out;
  }
  static std::optional<Elem> least_in(const FinitePoset& p, const Bitset& s) {
    std::optional<Elem> out;
    s.for_each([&](Elem z) {
      if (!out && s.is_subset_of(p.up(z))) out = z;
    });
    return out;
  }

  FinitePoset order_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  Elem top_ = 0;
  Elem bottom_ = 0;
};

using LatticePtr = std::shared_ptr<const Lattice>;

inline LatticePtr lattice_from_poset(FinitePoset p) {
  return std::make_shared<const Lattice>(Lattice::from_poset(std::move(p)));
}

/// Verdict of the distributivity scan with the first failing triple.
struct DistributivityResult {
  bool holds = true;
  std::optional<std::array<Elem, 3>> witness;
  explicit operator bool() const noexcept { return holds; }
};

/// Checks a∧(b∨c) = (a∧b)∨(a∧c) and its dual over all triples in index
/// order.
inline DistributivityResult is_distributive(const Lattice& l) {
  const auto n = static_cast<Elem>(l.size());
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c) {
        const bool meet_over_join = l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c));
        const bool join_over_meet = l.join(a, l.meet(b, c)) == l.meet(l.join(a, b), l.join(a, c));
        if (!meet_over_join || !join_over_meet) return {false, std::array<Elem, 3>{a, b, c}};
      }
  return {};
}

/// Checks a ∧ ⋁S = ⋁{a ∧ s | s ∈ S} for every element a and every down-set S
/// (on a finite carrier every subset has the same join as its down-closure).
/// Throws BudgetExceeded when the carrier has more than `budget` down-sets.
inline bool is_frame(const Lattice& l, std::size_t budget = 50'000) {
  const auto sets = down_sets(l.order(), budget);
  const auto n = static_cast<Elem>(l.size());
  for (const auto& s : sets) {
    const Elem js = l.join_of(s);
    for (Elem a = 0; a < n; ++a) {
      Elem rhs = l.bottom();
      s.for_each([&](Elem x) { rhs = l.join(rhs, l.meet(a, x)); });
      if (l.meet(a, js) != rhs) return false;
    }
  }
  return true;
}

}  // namespace latmon
