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

/// Round trip X → TX → G(TX) → T(G(TX)), where G extracts the elements
/// below themselves (supercompact for down-sets, compact for ideals).
struct StoneReport {
  AssemblyPtr tx;
  SubCarrier generators;
  /// The unit corestricted to G(TX).
  Hom unit_iso;
  AssemblyPtr tg;
  /// T(unit_iso): TX → T(G(TX)).
  Hom t_unit_iso;
  bool generators_iso = false;
  bool free_iso = false;
  std::optional<Rejection> failure;

  bool ok() const { return !failure; }
};

inline StoneReport stone_roundtrip(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  StoneReport rep;
  rep.tx = apply_object(t, x, budget);
  const MonadAssembly& tx = *rep.tx;
  const Bitset g = generator_relation(t, *tx.total).reflexive_part();
  try {
    rep.generators = make_sub_carrier(tx.total, g, t.base_category());
  } catch (const Error& e) {
    rep.failure = Rejection{"generators", e.what(), ""};
    return rep;
  }
  rep.unit_iso = Hom{x, rep.generators.carrier, std::vector<Elem>(x->size()), t.base_category()};
  for (Elem v = 0; v < x->size(); ++v) {
    const auto p = rep.generators.position[tx.unit(v)];
    if (!p) {
      rep.failure = Rejection{"generators", "unit leaves G(TX)", x->label(v)};
      return rep;
    }
    rep.unit_iso.map[v] = *p;
  }
  rep.generators_iso = inverse(rep.unit_iso).has_value();
  if (!rep.generators_iso) {
    rep.failure = Rejection{"generators", "G(TX) is not isomorphic to X via the unit", ""};
    return rep;
  }
  rep.tg = apply_object(t, rep.generators.carrier, budget);
  rep.t_unit_iso = apply_hom(rep.unit_iso, tx, *rep.tg);
  rep.free_iso = inverse(rep.t_unit_iso).has_value() &&
                 are_isomorphic(tx.total->order(), rep.tg->total->order()).has_value();
  if (!rep.free_iso) rep.failure = Rejection{"free", "T(G(TX)) is not isomorphic to TX", ""};
  return rep;
}

/// For f: X → Y, G(Tf) is Tf restricted to the generators; checks that it
/// stays inside G(TY) and that G(Tf)·u_X = u_Y·f.
inline IdentityResult stone_naturality(const Hom& f, const StoneReport& sx, const StoneReport& sy) {
  const Hom tf = apply_hom(f, *sx.tx, *sy.tx);
  const LatticePtr& gx = sx.generators.carrier;
  Hom gtf{gx, sy.generators.carrier, std::vector<Elem>(gx->size()), f.category};
  for (Elem v = 0; v < gx->size(); ++v) {
    const auto p = sy.generators.position[tf(sx.generators.inclusion(v))];
    if (!p) return {"G(Tf) lands in G(TY)", false, gx->label(v)};
    gtf.map[v] = *p;
  }
  return check_identity("G(Tf).u = u.f", compose(gtf, sx.unit_iso), compose(sy.unit_iso, f));
}

/// Whether a frame L is free as presented: its generators G(L) form a
/// sub-carrier and the map T(G(L)) → L, S ↦ ⋁S, is an isomorphism.
struct SupercoherenceReport {
  bool supercoherent = false;
  std::string reason;
};

inline SupercoherenceReport check_supercoherent(MonadInstance t, const LatticePtr& l,
                                                std::size_t budget = Budget{}.elements) {
  const Bitset g = generator_relation(t, *l).reflexive_part();
  SubCarrier sub;
  try {
    sub = make_sub_carrier(l, g, t.base_category());
  } catch (const Error& e) {
    return {false, std::string("not supercoherent as presented: ") + e.what()};
  }
  const auto tg = apply_object(t, sub.carrier, budget);
  Hom join{tg->total, l, std::vector<Elem>(tg->size()), Category::Frm};
  for (Elem s = 0; s < tg->size(); ++s) {
    Bitset image(l->size());
    tg->denotes(s).for_each([&](Elem v) { image.set(sub.inclusion(v)); });
    join.map[s] = l->join_of(image);
  }
  if (!inverse(join)) return {false, "not supercoherent as presented: join map is not an isomorphism"};
  return {true, ""};
}

}  // namespace latmon
