#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/algebra.hpp"
#include "latmon/hom.hpp"
#include "latmon/monad.hpp"
#include "latmon/split.hpp"

namespace latmon {

/// Carriers up to this size get the exhaustive costructure search.
inline constexpr std::size_t kExhaustiveSearchLimit = 5;

struct CoalgebraVerdict {
  bool holds = false;
  std::optional<Hom> c;
  std::optional<Rejection> rejection;
  /// Whether the exhaustive search ran, and how many costructures it found.
  bool searched = false;
  std::size_t alternatives = 0;
  /// The search agrees with the canonical candidate: exactly {c} when it
  /// succeeds, nothing when it fails.
  bool search_consistent = true;
};

inline CoalgebraVerdict has_coalgebra_structure(const AlgebraWitness& w) {
  CoalgebraVerdict v;
  auto co = build_coalgebra(w);
  v.holds = co.ok();
  if (co) v.c = co->c;
  else v.rejection = co.rejection();
  if (w.carrier()->size() <= kExhaustiveSearchLimit) {
    v.searched = true;
    const auto all = search_coalgebras(w);
    v.alternatives = all.size();
    v.search_consistent = v.holds ? (all.size() == 1 && all[0].map == v.c->map) : all.empty();
  }
  return v;
}

/// X as a retract of the free algebra (TY, m_Y): algebra maps s: X → TY and
/// p: TY → X with p·s = 1.
struct RetractionWitness {
  AlgebraWitness algebra;
  Hom s;
  Hom p;
  bool canonical = false;
};

/// Checks p·s = 1 and the algebra-map law for s: (X, a) → (TX, m) and
/// p: (TX, m) → (X, a), p and s being homs of the base category.
inline std::vector<IdentityResult> retraction_identities(const RetractionWitness& r) {
  const AlgebraWitness& w = r.algebra;
  const Category cat = w.monad.base_category();
  std::vector<IdentityResult> out;
  for (const Hom* h : {&r.s, &r.p}) {
    Hom tagged = *h;
    tagged.category = cat;
    auto rep = validate_hom(tagged);
    out.push_back({"base hom", rep.ok(), rep.ok() ? "" : rep.violations[0].law});
  }
  out.push_back(check_identity("p.s = 1", [&] { return compose(r.p, r.s); }, [&] { return identity_hom(w.carrier()); }));
  const Hom m = multiplication(w.tx(), w.ttx());
  out.push_back(check_identity("s.a = m.Ts", [&] { return compose(r.s, w.a); },
                               [&] { return compose(m, apply_hom(r.s, w.tx(), w.ttx(), false)); }));
  out.push_back(check_identity("p.m = a.Tp", [&] { return compose(r.p, m); },
                               [&] { return compose(w.a, apply_hom(r.p, w.ttx(), w.tx(), false)); }));
  return out;
}

/// Tries Y = X, p = a, s = c first; otherwise searches sections s of a that
/// are algebra maps, in enumeration order. With p = a this is complete: if X
/// is a retract of any free algebra TY then T(p)·T(e_Y)·s is such a section.
inline std::optional<RetractionWitness> find_retraction(const AlgebraWitness& w, std::size_t budget = 1'000'000) {
  if (auto co = build_coalgebra(w)) {
    RetractionWitness r{w, co->c, w.a, true};
    if (!first_failure(retraction_identities(r))) return r;
  }
  const Lattice& x = *w.carrier();
  const Lattice& tx = *w.tx().total;
  std::vector<Bitset> allowed(x.size(), Bitset(tx.size()));
  for (Elem t = 0; t < tx.size(); ++t) allowed[w.a(t)].set(t);
  const Hom m = multiplication(w.tx(), w.ttx());
  std::optional<RetractionWitness> found;
  enumerate_homs(x, tx, w.monad.base_category(), allowed, [&](const std::vector<Elem>& map) {
    Hom s{w.carrier(), w.tx().total, map, w.monad.base_category()};
    const Hom ts = apply_hom(s, w.tx(), w.ttx(), false);
    if (first_difference(compose(s, w.a), compose(m, ts))) return true;
    found = RetractionWitness{w, std::move(s), w.a, false};
    return false;
  }, budget);
  return found;
}

struct NamedAlgebra {
  std::string name;
  AlgebraWitness algebra;
};

struct LiftFailure {
  std::string target;
  std::vector<Elem> g;
};

struct LiftingReport {
  std::size_t morphisms = 0;
  std::size_t lifted = 0;
  std::vector<LiftFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Every algebra map (X, a) → (A, α), in enumeration order.
inline std::vector<Hom> algebra_morphisms(const AlgebraWitness& x, const AlgebraWitness& y,
                                          std::size_t budget = 1'000'000) {
  std::vector<Hom> out;
  enumerate_homs(*x.carrier(), *y.carrier(), x.monad.base_category(), {}, [&](const std::vector<Elem>& map) {
    Hom f{x.carrier(), y.carrier(), map, x.monad.base_category()};
    if (algebra_morphism_law(f, x, y).holds) out.push_back(std::move(f));
    return true;
  }, budget);
  return out;
}

/// For every (A, α) in the family and every algebra map g: (X, a) → (A, α),
/// looks for an algebra map h: (X, a) → (TA, m_A) with α·h = g.
inline LiftingReport lifting_property(const AlgebraWitness& w, const std::vector<NamedAlgebra>& family,
                                      std::size_t budget = 1'000'000) {
  LiftingReport rep;
  for (const auto& [name, target] : family) {
    const MonadAssembly& ta = target.tx();
    const Hom m_a = multiplication(ta, target.ttx());
    for (const Hom& g : algebra_morphisms(w, target, budget)) {
      ++rep.morphisms;
      std::vector<Bitset> allowed(w.carrier()->size(), Bitset(ta.size()));
      for (Elem x = 0; x < w.carrier()->size(); ++x)
        for (Elem t = 0; t < ta.size(); ++t)
          if (target.a(t) == g(x)) allowed[x].set(t);
      bool lifted = false;
      enumerate_homs(*w.carrier(), *ta.total, w.monad.base_category(), allowed, [&](const std::vector<Elem>& map) {
        Hom h{w.carrier(), ta.total, map, w.monad.base_category()};
        const Hom th = apply_hom(h, w.tx(), target.ttx(), false);
        lifted = !first_difference(compose(h, w.a), compose(m_a, th));
        return !lifted;
      }, budget);
      if (lifted) ++rep.lifted;
      else rep.failures.push_back({name, g.map});
    }
  }
  return rep;
}

}  // namespace latmon
