#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/lattice.hpp"

namespace latmon {

/// Which preservation laws a map between carriers must satisfy.
///
/// Poset: monotone. MLat: monotone, binary meets, top. DLat: MLat plus
/// binary joins and bottom. Frm: on finite carriers every join is finite, so
/// the same laws as DLat.
enum class Category { Poset, MLat, DLat, Frm };

inline std::string_view to_string(Category c) {
  switch (c) {
    case Category::Poset: return "Poset";
    case Category::MLat: return "MLat";
    case Category::DLat: return "DLat";
    case Category::Frm: return "Frm";
  }
  return "?";
}

inline bool preserves_meets(Category c) { return c != Category::Poset; }
inline bool preserves_joins(Category c) { return c == Category::DLat || c == Category::Frm; }

/// The weaker of two tags; composites are only promised the common laws.
inline Category weaker(Category a, Category b) {
  auto rank = [](Category c) { return c == Category::Poset ? 0 : c == Category::MLat ? 1 : 2; };
  return rank(a) <= rank(b) ? a : b;
}

struct Hom {
  LatticePtr source;
  LatticePtr target;
  std::vector<Elem> map;
  Category category = Category::Poset;

  Elem operator()(Elem x) const { return map[x]; }

  /// Same carriers (by identity) and same element map; the tag is metadata.
  friend bool operator==(const Hom& a, const Hom& b) {
    return a.source == b.source && a.target == b.target && a.map == b.map;
  }
};

inline Hom identity_hom(const LatticePtr& l, Category c = Category::Frm) {
  Hom h{l, l, std::vector<Elem>(l->size()), c};
  for (std::size_t i = 0; i < l->size(); ++i) h.map[i] = static_cast<Elem>(i);
  return h;
}

/// g ∘ f.
inline Hom compose(const Hom& g, const Hom& f) {
  if (f.target != g.source) throw SourceTargetMismatch("compose: target of the inner map is not the source of the outer");
  Hom h{f.source, g.target, std::vector<Elem>(f.map.size()), weaker(f.category, g.category)};
  for (std::size_t i = 0; i < f.map.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

template <class... Homs>
Hom compose(const Hom& h, const Hom& g, const Homs&... rest) {
  return compose(h, compose(g, rest...));
}

/// First element (in index order) where two parallel maps differ.
inline std::optional<Elem> first_difference(const Hom& f, const Hom& g) {
  if (f.source != g.source || f.target != g.target) throw SourceTargetMismatch("maps are not parallel");
  for (std::size_t i = 0; i < f.map.size(); ++i)
    if (f.map[i] != g.map[i]) return static_cast<Elem>(i);
  return std::nullopt;
}

/// f ≤ g pointwise in the target order.
inline bool pointwise_leq(const Hom& f, const Hom& g) {
  if (f.source != g.source || f.target != g.target) throw SourceTargetMismatch("maps are not parallel");
  for (std::size_t i = 0; i < f.map.size(); ++i)
    if (!f.target->leq(f.map[i], g.map[i])) return false;
  return true;
}

struct Violation {
  std::string law;
  std::string witness;
};

/// Every violated preservation law of a hom, one entry per law, each with
/// the first witness in index order. Empty means valid.
struct HomReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

inline void check_shape(const Hom& f) {
  if (!f.source || !f.target) throw SourceTargetMismatch("hom without carriers");
  if (f.map.size() != f.source->size())
    throw SourceTargetMismatch("map has " + std::to_string(f.map.size()) + " entries for a source of " +
                               std::to_string(f.source->size()));
  for (auto v : f.map)
    if (v >= f.target->size()) throw SourceTargetMismatch("map value outside the target");
}

inline HomReport validate_hom(const Hom& f) {
  check_shape(f);
  const Lattice& s = *f.source;
  const Lattice& t = *f.target;
  const auto n = static_cast<Elem>(s.size());
  HomReport report;
  auto pair_label = [&](Elem x, Elem y) { return "(" + s.label(x) + ", " + s.label(y) + ")"; };

  auto scan = [&](std::string law, auto&& holds) {
    for (Elem x = 0; x < n; ++x)
      for (Elem y = 0; y < n; ++y)
        if (!holds(x, y)) {
          report.violations.push_back({std::move(law), pair_label(x, y)});
          return;
        }
  };
  scan("monotone", [&](Elem x, Elem y) { return !s.leq(x, y) || t.leq(f(x), f(y)); });
  if (preserves_meets(f.category)) {
    scan("meet preserved", [&](Elem x, Elem y) { return f(s.meet(x, y)) == t.meet(f(x), f(y)); });
    if (f(s.top()) != t.top()) report.violations.push_back({"top preserved", s.label(s.top())});
  }
  if (preserves_joins(f.category)) {
    scan("join preserved", [&](Elem x, Elem y) { return f(s.join(x, y)) == t.join(f(x), f(y)); });
    if (f(s.bottom()) != t.bottom()) report.violations.push_back({"bottom preserved", s.label(s.bottom())});
  }
  return report;
}

/// First (x, y) in index order where f(x) ≤ y and x ≤ g(y) disagree.
inline std::optional<std::pair<Elem, Elem>> adjunction_violation(const Hom& lower, const Hom& upper) {
  if (lower.source != upper.target || lower.target != upper.source)
    throw SourceTargetMismatch("adjoint pair has mismatched carriers");
  const Lattice& p = *lower.source;
  const Lattice& q = *lower.target;
  for (Elem x = 0; x < p.size(); ++x)
    for (Elem y = 0; y < q.size(); ++y)
      if (q.leq(lower(x), y) != p.leq(x, upper(y))) return std::pair{x, y};
  return std::nullopt;
}

/// lower ⊣ upper: lower(x) ≤ y iff x ≤ upper(y) for all x, y.
inline bool check_adjoint(const Hom& lower, const Hom& upper) { return !adjunction_violation(lower, upper); }

/// g(y) = max{x | f(x) ≤ y}, when every such max exists and the adjunction
/// law holds.
inline std::optional<Hom> right_adjoint(const Hom& f) {
  check_shape(f);
  const Lattice& p = *f.source;
  const Lattice& q = *f.target;
  Hom g{f.target, f.source, std::vector<Elem>(q.size()), Category::Poset};
  for (Elem y = 0; y < q.size(); ++y) {
    Bitset below(p.size());
    for (Elem x = 0; x < p.size(); ++x)
      if (q.leq(f(x), y)) below.set(x);
    std::optional<Elem> max;
    below.for_each([&](Elem z) {
      if (!max && below.is_subset_of(p.order().down(z))) max = z;
    });
    if (!max) return std::nullopt;
    g.map[y] = *max;
  }
  if (!check_adjoint(f, g)) return std::nullopt;
  return g;
}

/// g(y) = min{x | y ≤ f(x)}, dual of right_adjoint.
inline std::optional<Hom> left_adjoint(const Hom& f) {
  check_shape(f);
  const Lattice& p = *f.source;
  const Lattice& q = *f.target;
  Hom g{f.target, f.source, std::vector<Elem>(q.size()), Category::Poset};
  for (Elem y = 0; y < q.size(); ++y) {
    Bitset above(p.size());
    for (Elem x = 0; x < p.size(); ++x)
      if (q.leq(y, f(x))) above.set(x);
    std::optional<Elem> min;
    above.for_each([&](Elem z) {
      if (!min && above.is_subset_of(p.order().up(z))) min = z;
    });
    if (!min) return std::nullopt;
    g.map[y] = *min;
  }
  if (!check_adjoint(g, f)) return std::nullopt;
  return g;
}

/// Order isomorphism between posets, lowest-index-first: the returned
/// bijection is the lexicographically least one.
inline std::optional<std::vector<Elem>> are_isomorphic(const FinitePoset& a, const FinitePoset& b) {
  const std::size_t n = a.size();
  if (b.size() != n || a.related_pairs() != b.related_pairs()) return std::nullopt;
  auto signature = [](const FinitePoset& p, Elem x) { return std::pair{p.up(x).count(), p.down(x).count()}; };
  std::vector<Elem> map(n);
  Bitset used(n);
  auto extend = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) return true;
    const auto ex = static_cast<Elem>(x);
    for (Elem y = 0; y < n; ++y) {
      if (used.test(y) || signature(a, ex) != signature(b, y)) continue;
      bool ok = true;
      for (Elem z = 0; z < ex && ok; ++z)
        ok = a.leq(z, ex) == b.leq(map[z], y) && a.leq(ex, z) == b.leq(y, map[z]);
      if (!ok) continue;
      map[x] = y;
      used.set(y);
      if (self(self, x + 1)) return true;
      used.reset(y);
    }
    return false;
  };
  if (!extend(extend, 0)) return std::nullopt;
  return map;
}

inline std::optional<Hom> isomorphism(const LatticePtr& a, const LatticePtr& b) {
  auto m = are_isomorphic(a->order(), b->order());
  if (!m) return std::nullopt;
  return Hom{a, b, std::move(*m), Category::Frm};
}

/// Inverse of a bijective map whose inverse is monotone (for lattices this
/// makes it an isomorphism in every category).
inline std::optional<Hom> inverse(const Hom& f) {
  check_shape(f);
  const std::size_t n = f.source->size();
  if (f.target->size() != n) return std::nullopt;
  Hom g{f.target, f.source, std::vector<Elem>(n), Category::Frm};
  Bitset hit(n);
  for (Elem x = 0; x < n; ++x) {
    if (hit.test(f(x))) return std::nullopt;
    hit.set(f(x));
    g.map[f(x)] = x;
  }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      if (f.source->leq(x, y) != f.target->leq(f(x), f(y))) return std::nullopt;
  return g;
}

/// Result of a bounded enumeration.
struct EnumerationSummary {
  std::size_t visited = 0;
  bool stopped_by_visitor = false;
  bool budget_exhausted = false;
};

/// Enumerates maps src → dst satisfying `cat`'s preservation laws, in
/// lexicographic order of the value vector, pruning on every law as soon as
/// the elements involved are assigned. `allowed[x]`, when given, restricts
/// the value of x. visit(const std::vector<Elem>&) returns false to stop.
template <class Visit>
EnumerationSummary enumerate_homs(const Lattice& src, const Lattice& dst, Category cat,
                                  std::span<const Bitset> allowed, Visit&& visit,
                                  std::size_t budget = 1'000'000) {
  const std::size_t n = src.size();
  const bool meets = preserves_meets(cat);
  const bool joins = preserves_joins(cat);
  std::vector<Elem> value(n);
  EnumerationSummary summary;

  auto consistent = [&](Elem x) {
    const Elem v = value[x];
    if (meets && x == src.top() && v != dst.top()) return false;
    if (joins && x == src.bottom() && v != dst.bottom()) return false;
    for (Elem y = 0; y <= x; ++y) {
      const Elem w = value[y];
      if (src.leq(y, x) && !dst.leq(w, v)) return false;
      if (src.leq(x, y) && !dst.leq(v, w)) return false;
      if (meets) {
        const Elem m = src.meet(x, y);
        if (m <= x && value[m] != dst.meet(v, w)) return false;
      }
      if (joins) {
        const Elem j = src.join(x, y);
        if (j <= x && value[j] != dst.join(v, w)) return false;
      }
      // pairs already assigned whose meet or join is x
      for (Elem z = 0; z <= y; ++z) {
        if (meets && src.meet(y, z) == x && v != dst.meet(w, value[z])) return false;
        if (joins && src.join(y, z) == x && v != dst.join(w, value[z])) return false;
      }
    }
    return true;
  };

  auto extend = [&](auto&& self, Elem x) -> bool {
    if (x == n) {
      ++summary.visited;
      if (!visit(static_cast<const std::vector<Elem>&>(value))) {
        summary.stopped_by_visitor = true;
        return false;
      }
      if (summary.visited >= budget) {
        summary.budget_exhausted = true;
        return false;
      }
      return true;
    }
    for (Elem v = 0; v < dst.size(); ++v) {
      if (!allowed.empty() && !allowed[x].test(v)) continue;
      value[x] = v;
      if (!consistent(x)) continue;
      if (!self(self, x + 1)) return false;
    }
    return true;
  };
  if (n > 0) extend(extend, 0);
  return summary;
}

/// All homs src → dst in category `cat`, in lexicographic order, up to `limit`.
inline std::vector<Hom> all_homs(const LatticePtr& src, const LatticePtr& dst, Category cat,
                                 std::size_t limit = 1'000'000) {
  std::vector<Hom> out;
  enumerate_homs(*src, *dst, cat, {}, [&](const std::vector<Elem>& m) {
    out.push_back(Hom{src, dst, m, cat});
    return true;
  }, limit);
  return out;
}

inline std::string describe_elem(const Lattice& l, Elem x) { return l.label(x); }

}  // namespace latmon
