#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/lattice.hpp"
#include "latmon/monad.hpp"
#include "latmon/split.hpp"

namespace latmon {

/// below[x] = {y | y R x} for a relation R on a lattice.
struct BelowRelation {
  std::vector<Bitset> below;

  bool related(Elem y, Elem x) const { return below[x].test(y); }
  std::size_t pairs() const {
    std::size_t n = 0;
    for (const auto& b : below) n += b.count();
    return n;
  }
  /// Elements related to themselves.
  Bitset reflexive_part() const {
    Bitset out(below.size());
    for (std::size_t x = 0; x < below.size(); ++x)
      if (below[x].test(x)) out.set(x);
    return out;
  }
};

/// Way-below. Every subset of a finite lattice is finite, so a cover of x
/// is its own finite subcover and y ≪ x iff y ≤ x.
inline BelowRelation way_below(const Lattice& l) {
  BelowRelation r;
  for (Elem x = 0; x < l.size(); ++x) r.below.push_back(l.order().down(x));
  return r;
}

/// Totally-below: y ⋘ x iff every down-set with join above x contains y.
/// The largest down-set missing y is L minus ↑y, so y ⋘ x iff x is not below
/// the join of L \ ↑y.
inline BelowRelation totally_below(const Lattice& l) {
  const std::size_t n = l.size();
  BelowRelation r{std::vector<Bitset>(n, Bitset(n))};
  for (Elem y = 0; y < n; ++y) {
    Bitset rest = Bitset::full(n);
    rest -= l.order().up(y);
    const Elem j = l.join_of(rest);
    for (Elem x = 0; x < n; ++x)
      if (!l.leq(x, j)) r.below[x].set(y);
  }
  return r;
}

/// Totally-below by its definition, intersecting all down-sets whose join
/// is above x. Throws BudgetExceeded past `budget` down-sets.
inline BelowRelation totally_below_by_down_sets(const Lattice& l, std::size_t budget = Budget{}.elements) {
  const std::size_t n = l.size();
  BelowRelation r{std::vector<Bitset>(n, Bitset::full(n))};
  std::size_t seen = 0;
  for_each_down_set(l.order(), [&](const Bitset& d) {
    if (++seen > budget) throw BudgetExceeded("more than " + std::to_string(budget) + " down-sets", seen);
    const Elem j = l.join_of(d);
    l.order().down(j).for_each([&](Elem x) { r.below[x] &= d; });
    return true;
  });
  return r;
}

/// The relation whose self-related elements are the generators for the
/// monad: totally-below for down-sets, way-below for ideals.
inline BelowRelation generator_relation(MonadInstance t, const Lattice& l) {
  return t.kind == MonadKind::Downset ? totally_below(l) : way_below(l);
}

/// (X, a) with a: TX → X satisfying a·e = 1 and a·Ta = a·m.
struct AlgebraWitness {
  MonadInstance monad;
  Assemblies levels;
  Hom a;

  const LatticePtr& carrier() const { return levels.t->base; }
  const MonadAssembly& tx() const { return *levels.t; }
  const MonadAssembly& ttx() const { return *levels.tt; }
};

/// (X, a, c) with c: (X, a) → (TX, m) an algebra map and a·c = 1.
struct CoalgebraWitness {
  AlgebraWitness algebra;
  Hom c;
  SplitDiagram presentation;
};

/// (X, a, c, b) with b: TX → X a coalgebra map and b·c = 1.
struct T1AlgebraWitness {
  CoalgebraWitness coalgebra;
  Hom b;
  SplitDiagram presentation;
  /// Whether b equals the join of the self-related members of each subset.
  bool formula_agrees = false;
  /// Whether b was obtained as the left adjoint of c.
  bool from_left_adjoint = false;

  const AlgebraWitness& algebra() const { return coalgebra.algebra; }
  const Hom& a() const { return coalgebra.algebra.a; }
  const Hom& c() const { return coalgebra.c; }
};

namespace detail {

inline std::optional<Rejection> hom_rejection(const std::string& stage, Hom h, Category cat) {
  h.category = cat;
  auto r = validate_hom(h);
  if (r.ok()) return std::nullopt;
  return Rejection{stage, r.violations[0].law, r.violations[0].witness};
}

inline std::optional<Rejection> identity_rejection(const std::string& stage, const IdentityResult& r) {
  if (r.holds) return std::nullopt;
  return Rejection{stage, r.name, r.witness};
}

inline std::optional<Rejection> split_rejection(const std::string& stage, const SplitDiagram& d) {
  if (const auto* bad = first_failure(d.evidence)) return Rejection{stage, bad->name, bad->witness};
  return std::nullopt;
}

}  // namespace detail

/// f: (X, a) → (Y, b) is an algebra map when f·a = b·Tf (f itself is
/// assumed to be a hom of the base category).
inline IdentityResult algebra_morphism_law(const Hom& f, const AlgebraWitness& x, const AlgebraWitness& y) {
  const Hom tf = apply_hom(f, x.tx(), y.tx(), false);
  return check_identity("f.a = b.Tf", compose(f, x.a), compose(y.a, tf));
}

/// Validates a given structure map a: TX → X.
inline Outcome<AlgebraWitness> make_algebra(MonadInstance t, Assemblies levels, Hom a) {
  const Category cat = t.base_category();
  if (a.source != levels.t->total || a.target != levels.t->base)
    throw SourceTargetMismatch("algebra structure must map TX to X");
  if (auto rej = detail::hom_rejection("algebra", a, cat)) return *rej;
  a.category = cat;
  if (auto v = algebra_law_violation(a, levels)) return Rejection{"algebra", v->law, v->element};
  return AlgebraWitness{t, std::move(levels), std::move(a)};
}

/// Candidate a = ⋁ (join of the denoted subset), accepted when it is a hom of
/// the base category satisfying both algebra laws.
inline Outcome<AlgebraWitness> build_algebra(MonadInstance t, const LatticePtr& x,
                                             std::size_t budget = Budget{}.elements) {
  if (t.kind == MonadKind::Ideal && !is_distributive(*x)) return Rejection{"algebra", "not distributive", ""};
  auto levels = assemble(t, x, budget);
  Hom a{levels.t->total, x, std::vector<Elem>(levels.t->size()), t.base_category()};
  for (Elem s = 0; s < levels.t->size(); ++s) a.map[s] = x->join_of(levels.t->denotes(s));
  return make_algebra(t, std::move(levels), std::move(a));
}

/// The free algebra (TX, m_X) over the assemblies of X. Needs TTTX
/// tabulated.
inline Outcome<AlgebraWitness> free_algebra(MonadInstance t, const Assemblies& lower,
                                            std::size_t budget = Budget{}.elements) {
  Assemblies levels{lower.tt, apply_object(t, lower.tt->total, budget)};
  return make_algebra(t, levels, multiplication(*lower.t, *lower.tt));
}

inline Outcome<AlgebraWitness> free_algebra(MonadInstance t, const LatticePtr& x,
                                            std::size_t budget = Budget{}.elements) {
  return free_algebra(t, assemble(t, x, budget), budget);
}

/// The coalgebra split equalizer: c; Te, Tc; a, m.
inline SplitDiagram present_coalgebra(const AlgebraWitness& w, const Hom& c) {
  const auto& tx = w.tx();
  const auto& ttx = w.ttx();
  SplitDiagram d{SplitKind::Equalizer,
                 apply_hom(tx.unit, tx, ttx, false),
                 apply_hom(c, tx, ttx, false),
                 multiplication(tx, ttx),
                 c,
                 w.a,
                 {}};
  return verify_split(std::move(d));
}

/// The algebra split coequalizer: m, Ta; eT, a, e.
inline SplitDiagram present_algebra(const AlgebraWitness& w) {
  const auto& tx = w.tx();
  const auto& ttx = w.ttx();
  SplitDiagram d{SplitKind::Coequalizer,
                 multiplication(tx, ttx),
                 apply_hom(w.a, ttx, tx, false),
                 ttx.unit,
                 w.a,
                 tx.unit,
                 {}};
  return verify_split(std::move(d));
}

namespace detail {

// Every check a costructure must pass, in report order.
inline std::optional<Rejection> coalgebra_rejection(const AlgebraWitness& w, const Hom& c, SplitDiagram* out) {
  const Category cat = w.monad.base_category();
  if (auto rej = hom_rejection("coalgebra", c, cat)) return rej;
  if (auto rej = identity_rejection("coalgebra", check_identity("a.c = 1", compose(w.a, c),
                                                                identity_hom(w.carrier()))))
    return rej;
  const Hom m = multiplication(w.tx(), w.ttx());
  const Hom tc = apply_hom(c, w.tx(), w.ttx(), false);
  if (auto rej = identity_rejection("coalgebra", check_identity("c.a = m.Tc", compose(c, w.a), compose(m, tc))))
    return rej;
  if (auto v = adjunction_violation(c, w.a))
    return Rejection{"coalgebra", "c -| a", w.carrier()->label(v->first) + ", " + w.tx().total->label(v->second)};
  try {
    auto d = present_coalgebra(w, c);
    if (out) *out = std::move(d);
  } catch (const IdentityViolated& e) {
    return Rejection{"coalgebra", e.identity(), e.witness()};
  }
  return std::nullopt;
}

}  // namespace detail

/// The canonical candidate c(x) = {y | y below x} for the generator
/// relation, as a map X → TX, or a rejection when some c(x) is not an
/// element of TX.
inline Outcome<Hom> coalgebra_candidate(const AlgebraWitness& w) {
  const auto rel = generator_relation(w.monad, *w.carrier());
  Hom c{w.carrier(), w.tx().total, std::vector<Elem>(w.carrier()->size()), w.monad.base_category()};
  for (Elem x = 0; x < w.carrier()->size(); ++x) {
    auto t = w.tx().find(rel.below[x]);
    if (!t) return Rejection{"coalgebra", "candidate not admissible", w.carrier()->label(x)};
    c.map[x] = *t;
  }
  return c;
}

inline Outcome<CoalgebraWitness> make_coalgebra(const AlgebraWitness& w, Hom c) {
  SplitDiagram d;
  if (auto rej = detail::coalgebra_rejection(w, c, &d)) return *rej;
  c.category = w.monad.base_category();
  return CoalgebraWitness{w, std::move(c), std::move(d)};
}

inline Outcome<CoalgebraWitness> build_coalgebra(const AlgebraWitness& w) {
  auto c = coalgebra_candidate(w);
  if (!c) return c.rejection();
  return make_coalgebra(w, *c);
}

/// Every costructure c on (X, a) passing all coalgebra checks, by exhaustive
/// search over base homs with a·c = 1.
inline std::vector<Hom> search_coalgebras(const AlgebraWitness& w, std::size_t budget = 1'000'000) {
  const Lattice& x = *w.carrier();
  const Lattice& tx = *w.tx().total;
  std::vector<Bitset> allowed(x.size(), Bitset(tx.size()));
  for (Elem t = 0; t < tx.size(); ++t) allowed[w.a(t)].set(t);
  std::vector<Hom> out;
  enumerate_homs(x, tx, w.monad.base_category(), allowed, [&](const std::vector<Elem>& map) {
    Hom c{w.carrier(), w.tx().total, map, w.monad.base_category()};
    if (!detail::coalgebra_rejection(w, c, nullptr)) out.push_back(std::move(c));
    return true;
  }, budget);
  return out;
}

/// The T₁ split coequalizer: Ta, Tb; Te, b, c.
inline SplitDiagram present_t1(const CoalgebraWitness& w, const Hom& b) {
  const auto& tx = w.algebra.tx();
  const auto& ttx = w.algebra.ttx();
  SplitDiagram d{SplitKind::Coequalizer,
                 apply_hom(w.algebra.a, ttx, tx, false),
                 apply_hom(b, ttx, tx, false),
                 apply_hom(tx.unit, tx, ttx, false),
                 b,
                 w.c,
                 {}};
  return verify_split(std::move(d));
}

namespace detail {

inline std::optional<Rejection> t1_rejection(const CoalgebraWitness& w, const Hom& b, SplitDiagram* out) {
  const AlgebraWitness& alg = w.algebra;
  if (auto rej = hom_rejection("t1-algebra", b, alg.monad.base_category())) return rej;
  if (auto rej = identity_rejection("t1-algebra", check_identity("b.c = 1", compose(b, w.c),
                                                                 identity_hom(alg.carrier()))))
    return rej;
  if (auto v = adjunction_violation(b, w.c))
    return Rejection{"t1-algebra", "b -| c", alg.tx().total->label(v->first) + ", " + alg.carrier()->label(v->second)};
  const Hom m = multiplication(alg.tx(), alg.ttx());
  const Hom tb = apply_hom(b, alg.ttx(), alg.tx(), false);
  if (auto rej = identity_rejection("t1-algebra", check_identity("b.m = a.Tb", compose(b, m), compose(alg.a, tb))))
    return rej;
  const Hom te = apply_hom(alg.tx().unit, alg.tx(), alg.ttx(), false);
  if (auto rej = identity_rejection("t1-algebra", check_identity("c.b = Tb.Te", compose(w.c, b), compose(tb, te))))
    return rej;
  try {
    auto d = present_t1(w, b);
    if (out) *out = std::move(d);
  } catch (const IdentityViolated& e) {
    return Rejection{"t1-algebra", e.identity(), e.witness()};
  }
  return std::nullopt;
}

}  // namespace detail

/// b(S) = ⋁{y ∈ S | y below y} for the generator relation.
inline Hom t1_formula(const CoalgebraWitness& w) {
  const AlgebraWitness& alg = w.algebra;
  const Bitset self = generator_relation(alg.monad, *alg.carrier()).reflexive_part();
  Hom b{alg.tx().total, alg.carrier(), std::vector<Elem>(alg.tx().size()), alg.monad.base_category()};
  for (Elem s = 0; s < alg.tx().size(); ++s) b.map[s] = alg.carrier()->join_of(alg.tx().denotes(s) & self);
  return b;
}

inline Outcome<T1AlgebraWitness> make_t1_algebra(const CoalgebraWitness& w, Hom b) {
  SplitDiagram d;
  if (auto rej = detail::t1_rejection(w, b, &d)) return *rej;
  b.category = w.algebra.monad.base_category();
  const bool agrees = t1_formula(w).map == b.map;
  return T1AlgebraWitness{w, std::move(b), std::move(d), agrees, false};
}

/// Candidate b: the left adjoint of c when it exists (a T₁-structure must be
/// one, and adjoints are unique), otherwise the join formula. Accepted when
/// b is a base hom, b·c = 1, b ⊣ c, b is a coalgebra map and the T₁
/// presentation verifies.
inline Outcome<T1AlgebraWitness> build_t1_algebra(const CoalgebraWitness& w) {
  auto left = left_adjoint(w.c);
  auto out = make_t1_algebra(w, left ? *left : t1_formula(w));
  if (!out) return out;
  T1AlgebraWitness v = *out;
  v.from_left_adjoint = left.has_value();
  return v;
}

/// Every T₁-structure on (X, a, c), by exhaustive search over base homs with
/// b·c = 1.
inline std::vector<Hom> search_t1_structures(const CoalgebraWitness& w, std::size_t budget = 1'000'000) {
  const AlgebraWitness& alg = w.algebra;
  const Lattice& tx = *alg.tx().total;
  const Lattice& x = *alg.carrier();
  std::vector<Bitset> allowed(tx.size(), Bitset::full(x.size()));
  for (Elem e = 0; e < x.size(); ++e) allowed[w.c(e)] = Bitset::singleton(x.size(), e);
  std::vector<Hom> out;
  enumerate_homs(tx, x, alg.monad.base_category(), allowed, [&](const std::vector<Elem>& map) {
    Hom b{alg.tx().total, alg.carrier(), map, alg.monad.base_category()};
    if (!detail::t1_rejection(w, b, nullptr)) out.push_back(std::move(b));
    return true;
  }, budget);
  return out;
}

/// The stage reached by the tower on one object.
struct TowerResult {
  std::optional<AlgebraWitness> algebra;
  std::optional<CoalgebraWitness> coalgebra;
  std::optional<T1AlgebraWitness> t1;
  std::optional<Rejection> rejection;
};

inline TowerResult build_tower(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  TowerResult r;
  auto alg = build_algebra(t, x, budget);
  if (!alg) {
    r.rejection = alg.rejection();
    return r;
  }
  r.algebra = *alg;
  auto co = build_coalgebra(*alg);
  if (!co) {
    r.rejection = co.rejection();
    return r;
  }
  r.coalgebra = *co;
  auto t1 = build_t1_algebra(*co);
  if (!t1) {
    r.rejection = t1.rejection();
    return r;
  }
  r.t1 = *t1;
  return r;
}

/// The unique r: TX → X with e_X·r = b·e_TX for a map b: TTX → TX. Requires
/// the image of e_X to be the equalizer of (e_TX, Te_X), which is checked.
/// Returns nullopt when some b(e_TX(t)) is not principal.
inline std::optional<Hom> try_factor_through_unit(const Assemblies& levels, const Hom& b) {
  const MonadAssembly& tx = *levels.t;
  const MonadAssembly& ttx = *levels.tt;
  if (b.source != ttx.total || b.target != tx.total) throw SourceTargetMismatch("factor_through_unit: b must map TTX to TX");
  const Hom te = apply_hom(tx.unit, tx, ttx, false);
  std::vector<std::optional<Elem>> principal(tx.size());
  for (Elem x = 0; x < tx.base->size(); ++x) principal[tx.unit(x)] = x;
  for (Elem t = 0; t < tx.size(); ++t)
    if ((te(t) == ttx.unit(t)) != principal[t].has_value())
      throw PreconditionViolated("the unit is not the equalizer of (eT, Te) at " + tx.total->label(t));
  Hom r{tx.total, tx.base, std::vector<Elem>(tx.size()), tx.monad.base_category()};
  for (Elem t = 0; t < tx.size(); ++t) {
    const auto& p = principal[b(ttx.unit(t))];
    if (!p) return std::nullopt;
    r.map[t] = *p;
  }
  for (Elem x = 0; x < tx.base->size(); ++x)
    if (r(tx.unit(x)) != x) throw IdentityViolated("r.e = 1", tx.base->label(x));
  return r;
}

/// As try_factor_through_unit, throwing NotFactorable.
inline Hom factor_through_unit(const Assemblies& levels, const Hom& b) {
  auto r = try_factor_through_unit(levels, b);
  if (!r) throw NotFactorable("b.eT does not land in the image of the unit");
  return *r;
}

}  // namespace latmon
