#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latmon/algebra.hpp"
#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/monad.hpp"
#include "latmon/split.hpp"
#include "latmon/subcarrier.hpp"

namespace latmon {

/// T^φX = {t ∈ TX | Te(t) = eT(t)} as a sub-carrier of TX, with inclusion
/// phi and the induced unit e^φ: X → T^φX.
struct FakirAssembly {
  MonadInstance monad;
  Assemblies levels;
  SubCarrier sub;
  Hom unit;

  const LatticePtr& base() const { return levels.t->base; }
  const LatticePtr& carrier() const { return sub.carrier; }
  const Hom& phi() const { return sub.inclusion; }
};

using FakirPtr = std::shared_ptr<const FakirAssembly>;

/// Builds T^φX and checks phi·e^φ = e. Throws BudgetExceeded, or
/// PreconditionViolated when the equalizer is not closed in TX.
inline FakirPtr fakir_object(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  auto f = std::make_shared<FakirAssembly>();
  f->monad = t;
  f->levels = assemble(t, x, budget);
  const MonadAssembly& tx = *f->levels.t;
  const Hom te = t_unit(f->levels);
  Bitset members(tx.size());
  for (Elem s = 0; s < tx.size(); ++s)
    if (te(s) == f->levels.tt->unit(s)) members.set(s);
  f->sub = make_sub_carrier(tx.total, members, t.base_category());
  f->unit = Hom{x, f->sub.carrier, std::vector<Elem>(x->size()), t.base_category()};
  for (Elem v = 0; v < x->size(); ++v) {
    const auto p = f->sub.position[tx.unit(v)];
    if (!p) throw IdentityViolated("e lands in the equalizer", x->label(v));
    f->unit.map[v] = *p;
  }
  if (first_difference(compose(f->phi(), f->unit), tx.unit)) throw IdentityViolated("phi.e' = e", "");
  return f;
}

/// T^φf: the restriction of Tf to the Fakir sub-carriers.
inline Hom phi_functor(const Hom& f, const FakirAssembly& fx, const FakirAssembly& fy) {
  const Hom tf = apply_hom(f, *fx.levels.t, *fy.levels.t);
  Hom out{fx.carrier(), fy.carrier(), std::vector<Elem>(fx.carrier()->size()), fx.monad.base_category()};
  for (Elem v = 0; v < fx.carrier()->size(); ++v) {
    const auto p = fy.sub.position[tf(fx.phi()(v))];
    if (!p) throw IdentityViolated("Tf preserves the equalizer", fx.carrier()->label(v));
    out.map[v] = *p;
  }
  return out;
}

/// The three levels T^φX, T^φT^φX, T^φT^φT^φX needed for the multiplication
/// and its laws.
struct FakirTower {
  FakirPtr one;    // over X
  FakirPtr two;    // over T^φX
  FakirPtr three;  // over T^φT^φX
};

inline FakirTower fakir_tower(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  FakirTower f;
  f.one = fakir_object(t, x, budget);
  f.two = fakir_object(t, f.one->carrier(), budget);
  f.three = fakir_object(t, f.two->carrier(), budget);
  return f;
}

/// m^φ: T^φT^φX → T^φX through phi·m^φ = m·(phi∘phi), with
/// phi∘phi = T(phi_X)·phi_{T^φX}. `lower` is over X and `upper` over T^φX.
/// Throws IdentityViolated when m·(phi∘phi) leaves T^φX.
inline Hom fakir_mult(const FakirAssembly& lower, const FakirAssembly& upper) {
  if (upper.base() != lower.carrier()) throw SourceTargetMismatch("fakir_mult: upper must be over T^phi X");
  const MonadAssembly& tx = *lower.levels.t;
  const MonadAssembly& ttx = *lower.levels.tt;
  const Hom t_phi = apply_hom(lower.phi(), *upper.levels.t, ttx);
  const Hom phiphi = compose(t_phi, upper.phi());
  const Hom through = compose(multiplication(tx, ttx), phiphi);
  Hom m{upper.carrier(), lower.carrier(), std::vector<Elem>(upper.carrier()->size()), lower.monad.base_category()};
  for (Elem v = 0; v < upper.carrier()->size(); ++v) {
    const auto p = lower.sub.position[through(v)];
    if (!p) throw IdentityViolated("m.(phi phi) lands in T^phi X", upper.carrier()->label(v));
    m.map[v] = *p;
  }
  return m;
}

struct FakirLawReport {
  std::vector<IdentityResult> identities;
  std::size_t size_tphi = 0;
  bool ok() const { return !first_failure(identities); }
};

/// Defining equations and monad laws for (T^φ, m^φ, e^φ) at X.
inline FakirLawReport check_fakir_laws(const FakirTower& f) {
  FakirLawReport rep;
  const FakirAssembly& one = *f.one;
  const FakirAssembly& two = *f.two;
  const FakirAssembly& three = *f.three;
  rep.size_tphi = one.carrier()->size();
  const Hom m1 = fakir_mult(one, two);    // T^φT^φX → T^φX
  const Hom m2 = fakir_mult(two, three);  // T^φT^φT^φX → T^φT^φX
  // T^φ applied to maps out of X and T^φX needs Fakir assemblies of their targets
  const Hom tphi_e = phi_functor(one.unit, one, two);  // T^φ(e^φ_X): T^φX → T^φT^φX
  // T^φ(m^φ_X): T^φT^φT^φX → T^φT^φX requires the assembly over T^φT^φX as source
  const Hom tphi_m = phi_functor(m1, three, two);
  rep.identities = {
      check_identity("phi.e' = e", compose(one.phi(), one.unit), one.levels.t->unit),
      check_identity("m'.e'T' = 1", compose(m1, two.unit), identity_hom(one.carrier())),
      check_identity("m'.T'e' = 1", compose(m1, tphi_e), identity_hom(one.carrier())),
      check_identity("m'.T'm' = m'.m'T'", compose(m1, tphi_m), compose(m1, m2)),
  };
  return rep;
}

/// Inverse of e^φ_X when it is an isomorphism.
inline std::optional<Hom> check_unit_iso(const FakirAssembly& f) { return inverse(f.unit); }

/// Inverse of T(e^φ_X): TX → T(T^φX) when it is an isomorphism.
inline std::optional<Hom> check_Tunit_iso(const FakirAssembly& f, std::size_t budget = Budget{}.elements) {
  const auto t_tphi = apply_object(f.monad, f.carrier(), budget);
  return inverse(apply_hom(f.unit, *f.levels.t, *t_tphi));
}

struct FixesAlgebrasReport {
  SplitDiagram equalizer;  // e; Te, eT; a, Ta
  std::optional<Hom> unit_inverse;
  bool ok() const { return equalizer.verified() && unit_inverse.has_value(); }
};

/// The split equalizer e; Te, eT; a, Ta of an algebra (X, a) and the
/// isomorphism e^φ_X. Throws IdentityViolated on a failed identity.
inline FixesAlgebrasReport fixes_algebras(const AlgebraWitness& w, std::size_t budget = Budget{}.elements) {
  const MonadAssembly& tx = w.tx();
  const MonadAssembly& ttx = w.ttx();
  FixesAlgebrasReport rep;
  rep.equalizer = verify_split(SplitDiagram{SplitKind::Equalizer,
                                            apply_hom(tx.unit, tx, ttx, false),
                                            ttx.unit,
                                            apply_hom(w.a, ttx, tx, false),
                                            tx.unit,
                                            w.a,
                                            {}});
  const auto f = fakir_object(w.monad, w.carrier(), budget);
  rep.unit_inverse = check_unit_iso(*f);
  return rep;
}

}  // namespace latmon
