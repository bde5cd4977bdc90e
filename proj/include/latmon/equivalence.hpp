#pragma once

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

/// Everything the equivalence pipeline computes for one T₁-algebra
/// (X, a, c, b).
struct PipelineReport {
  /// X_c = {x | c(x) = e(x)} with inclusion kappa.
  SubCarrier xc;
  /// r: X → X_c with kappa·r = b·e.
  Hom r;
  SplitDiagram coequalizer;  // a, b; e, r, kappa
  SplitDiagram equalizer;    // kappa; c, e; r, b
  AssemblyPtr txc;
  /// r·a·T(kappa): T(X_c) → X_c.
  Hom ac;
  /// T(r)·c: X → T(X_c).
  Hom iso;
  std::vector<IdentityResult> transport;
  bool isomorphic = false;
  std::optional<Rejection> failure;

  bool ok() const { return !failure; }
};

namespace detail {

inline std::optional<Rejection> first_rejection(const std::string& stage, const std::vector<IdentityResult>& rs) {
  if (const auto* bad = first_failure(rs)) return Rejection{stage, bad->name, bad->witness};
  return std::nullopt;
}

}  // namespace detail

/// Runs the pipeline on a T₁-algebra: the equalizer X_c, the retraction r,
/// the combined split coequalizer and split equalizer, and the isomorphism
/// (X, a, c, b) ≅ (T X_c, m, Te, T a_c) mediated by T(r)·c.
inline PipelineReport main_equivalence_pipeline(const T1AlgebraWitness& w, std::size_t budget = Budget{}.elements) {
  const AlgebraWitness& alg = w.algebra();
  const MonadInstance t = alg.monad;
  const LatticePtr& x = alg.carrier();
  const MonadAssembly& tx = alg.tx();
  const Hom& a = alg.a;
  const Hom& c = w.c();
  const Hom& b = w.b;
  const Hom& e = tx.unit;
  PipelineReport rep;

  Bitset fixed(x->size());
  for (Elem v = 0; v < x->size(); ++v)
    if (c(v) == e(v)) fixed.set(v);
  try {
    rep.xc = make_sub_carrier(x, fixed, t.base_category());
  } catch (const Error& err) {
    rep.failure = Rejection{"equalizer", err.what(), ""};
    return rep;
  }
  const Hom& kappa = rep.xc.inclusion;

  rep.r = Hom{x, rep.xc.carrier, std::vector<Elem>(x->size()), t.base_category()};
  for (Elem v = 0; v < x->size(); ++v) {
    const auto p = rep.xc.position[b(e(v))];
    if (!p) {
      rep.failure = Rejection{"retraction", "b.e does not factor through X_c", x->label(v)};
      return rep;
    }
    rep.r.map[v] = *p;
  }
  if (auto rej = detail::hom_rejection("retraction", rep.r, t.base_category())) {
    rep.failure = rej;
    return rep;
  }

  rep.coequalizer = SplitDiagram{SplitKind::Coequalizer, a, b, e, rep.r, kappa, {}};
  rep.coequalizer.evidence = split_identities(rep.coequalizer);
  if ((rep.failure = detail::split_rejection("split coequalizer", rep.coequalizer))) return rep;
  rep.equalizer = SplitDiagram{SplitKind::Equalizer, c, e, b, kappa, rep.r, {}};
  rep.equalizer.evidence = split_identities(rep.equalizer);
  if ((rep.failure = detail::split_rejection("split equalizer", rep.equalizer))) return rep;

  rep.txc = apply_object(t, rep.xc.carrier, budget);
  const MonadAssembly& txc = *rep.txc;
  const auto ttxc = apply_object(t, txc.total, budget);
  const Hom tkappa = apply_hom(kappa, txc, tx);
  rep.ac = compose(rep.r, a, tkappa);
  const Hom tr = apply_hom(rep.r, tx, txc);
  rep.iso = compose(tr, c);
  const Hom tiso = apply_hom(rep.iso, tx, *ttxc);
  const Hom mxc = multiplication(txc, *ttxc);
  const Hom te_xc = apply_hom(txc.unit, txc, *ttxc);
  const Hom tac = apply_hom(rep.ac, *ttxc, txc);
  rep.transport = {
      check_identity("r.a = r.b", compose(rep.r, a), compose(rep.r, b)),
      check_identity("r.kappa = 1", compose(rep.r, kappa), identity_hom(rep.xc.carrier)),
      check_identity("iso.b = Tr", compose(rep.iso, b), tr),
      check_identity("iso.a = m.T(iso)", compose(rep.iso, a), compose(mxc, tiso)),
      check_identity("T(iso).c = Te.iso", compose(tiso, c), compose(te_xc, rep.iso)),
      check_identity("iso.b = T(ac).T(iso)", compose(rep.iso, b), compose(tac, tiso)),
  };
  if (!inverse(rep.iso)) rep.transport.push_back({"iso bijective", false, ""});
  if (auto rej = detail::hom_rejection("transport", rep.iso, t.base_category())) {
    rep.failure = rej;
    return rep;
  }
  rep.isomorphic = are_isomorphic(x->order(), txc.total->order()).has_value();
  if ((rep.failure = detail::first_rejection("transport", rep.transport))) return rep;
  if (!rep.isomorphic) rep.failure = Rejection{"transport", "T(X_c) is not isomorphic to X", ""};
  return rep;
}

/// f: (X, a, c, b) → (Y, a', c', b') is a T₁-algebra map when it is a base hom
/// commuting with all three structure maps.
inline std::vector<IdentityResult> t1_morphism_laws(const Hom& f, const T1AlgebraWitness& x, const T1AlgebraWitness& y) {
  const Hom tf = apply_hom(f, x.algebra().tx(), y.algebra().tx(), false);
  return {
      check_identity("f.a = a'.Tf", compose(f, x.a()), compose(y.a(), tf)),
      check_identity("c'.f = Tf.c", compose(y.c(), f), compose(tf, x.c())),
      check_identity("f.b = b'.Tf", compose(f, x.b), compose(y.b, tf)),
  };
}

struct TransportReport {
  Hom fc;
  std::vector<IdentityResult> identities;
  bool ok() const { return !first_failure(identities); }
};

/// f_c = r'·f·kappa: X_c → Y_c, with both squares and the algebra-map law
/// for (X_c, a_c) → (Y_c, a'_c) checked. Throws NotFactorable when f·kappa
/// leaves Y_c.
inline TransportReport morphism_transport(const Hom& f, const PipelineReport& px, const PipelineReport& py) {
  TransportReport rep;
  rep.fc = compose(py.r, f, px.xc.inclusion);
  for (Elem v = 0; v < px.xc.carrier->size(); ++v)
    if (!py.xc.position[f(px.xc.inclusion(v))]) throw NotFactorable("f.kappa leaves Y_c at " + px.xc.carrier->label(v));
  rep.fc.category = f.category;
  const Hom tfc = apply_hom(rep.fc, *px.txc, *py.txc, false);
  rep.identities = {
      check_identity("fc.r = r'.f", compose(rep.fc, px.r), compose(py.r, f)),
      check_identity("f.kappa = kappa'.fc", compose(f, px.xc.inclusion), compose(py.xc.inclusion, rep.fc)),
      check_identity("fc.ac = a'c.T(fc)", compose(rep.fc, px.ac), compose(py.ac, tfc)),
  };
  return rep;
}

}  // namespace latmon
