#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "latmon/bitset.hpp"
#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/lattice.hpp"
#include "latmon/poset.hpp"

namespace latmon {

enum class MonadKind { Downset, Ideal };

/// One of the two concrete monads: down-sets on meet-semilattices with top,
/// or ideals on distributive lattices.
struct MonadInstance {
  MonadKind kind = MonadKind::Downset;

  static constexpr MonadInstance downset() { return {MonadKind::Downset}; }
  static constexpr MonadInstance ideal() { return {MonadKind::Ideal}; }

  Category base_category() const noexcept { return kind == MonadKind::Downset ? Category::MLat : Category::DLat; }
  std::string_view name() const noexcept { return kind == MonadKind::Downset ? "downset" : "ideal"; }

  friend bool operator==(const MonadInstance&, const MonadInstance&) = default;
};

/// Budgets shared by every exhaustive scan.
struct Budget {
  /// Largest number of subset-elements materialized or enumerated per level.
  std::size_t elements = 50'000;
  /// Seed for the associativity sample taken past `elements`.
  std::uint64_t seed = 0xC0FFEE;
  /// Number of sampled elements once enumeration stops.
  std::size_t samples = 2'000;
};

/// Is `s` an admissible subset of `l` for the monad: a down-set, and for
/// ideals also containing the bottom and closed under binary joins.
inline bool is_admissible(MonadInstance t, const Lattice& l, const Bitset& s) {
  if (!l.order().is_down_set(s)) return false;
  if (t.kind == MonadKind::Downset) return true;
  if (!s.test(l.bottom())) return false;
  bool closed = true;
  s.for_each([&](Elem x) {
    s.for_each([&](Elem y) { closed = closed && s.test(l.join(x, y)); });
  });
  return closed;
}

/// Smallest admissible subset containing `s`.
inline Bitset admissible_closure(MonadInstance t, const Lattice& l, const Bitset& s) {
  if (t.kind == MonadKind::Downset) return l.order().down_closure(s);
  Bitset acc = s;
  acc.set(l.bottom());
  for (bool grew = true; grew;) {
    grew = false;
    Bitset next = acc;
    acc.for_each([&](Elem x) { acc.for_each([&](Elem y) { next.set(l.join(x, y)); }); });
    next = l.order().down_closure(next);
    if (!(next == acc)) {
      acc = std::move(next);
      grew = true;
    }
  }
  return acc;
}

/// Visits admissible subsets of `l` in canonical order; visit returns false
/// to stop.
template <class Visit>
void for_each_admissible(MonadInstance t, const Lattice& l, Visit&& visit) {
  if (t.kind == MonadKind::Downset) {
    for_each_down_set(l.order(), visit);
    return;
  }
  for_each_down_set(l.order(), [&](const Bitset& s) { return !is_admissible(t, l, s) || visit(s); });
}

inline std::string subset_label(const Lattice& l, const Bitset& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](Elem x) {
    if (!first) out += ",";
    out += l.label(x);
    first = false;
  });
  return out + "}";
}

/// TX for a concrete X: the carrier of admissible subsets ordered by
/// inclusion, the subset each element denotes, and the unit e_X = ↓.
struct MonadAssembly {
  MonadInstance monad;
  LatticePtr base;
  LatticePtr total;
  std::vector<Bitset> subsets;
  std::unordered_map<Bitset, Elem, BitsetHash> index;
  Hom unit;

  std::size_t size() const noexcept { return subsets.size(); }
  const Bitset& denotes(Elem t) const { return subsets[t]; }

  std::optional<Elem> find(const Bitset& s) const {
    auto it = index.find(s);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }

  Elem element(const Bitset& s) const {
    auto e = find(s);
    if (!e) throw Error("subset " + subset_label(*base, s) + " is not an element of T" + "(X)");
    return *e;
  }

  Bitset closure(const Bitset& s) const { return admissible_closure(monad, *base, s); }
};

using AssemblyPtr = std::shared_ptr<const MonadAssembly>;

/// Builds TX in canonical order, checks that meets are intersections and
/// joins are the admissible closure of unions, that TX is distributive (a
/// finite frame) and that the unit is a hom of the monad's category.
/// Throws BudgetExceeded past `budget` admissible subsets and
/// PreconditionViolated when X is outside the monad's domain.
inline AssemblyPtr apply_object(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  if (t.kind == MonadKind::Ideal && !is_distributive(*x))
    throw PreconditionViolated("the ideal monad needs a distributive lattice");
  auto a = std::make_shared<MonadAssembly>();
  a->monad = t;
  a->base = x;
  bool over = false;
  for_each_admissible(t, *x, [&](const Bitset& s) {
    if (a->subsets.size() >= budget) {
      over = true;
      return false;
    }
    a->subsets.push_back(s);
    return true;
  });
  if (over) throw BudgetExceeded("T(X) has more than " + std::to_string(budget) + " elements", budget + 1);

  const std::size_t n = a->subsets.size();
  std::vector<std::string> labels;
  labels.reserve(n);
  std::vector<Bitset> up(n, Bitset(n));
  for (std::size_t i = 0; i < n; ++i) {
    a->index.emplace(a->subsets[i], static_cast<Elem>(i));
    labels.push_back(subset_label(*x, a->subsets[i]));
    for (std::size_t j = i; j < n; ++j)
      if (a->subsets[i].is_subset_of(a->subsets[j])) up[i].set(j);
  }
  a->total = lattice_from_poset(FinitePoset::from_relation(std::move(labels), std::move(up)));

  const Lattice& tx = *a->total;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i; j < n; ++j) {
      if (!(a->subsets[tx.meet(i, j)] == (a->subsets[i] & a->subsets[j])))
        throw Error("meet in T(X) is not intersection at " + tx.label(i) + ", " + tx.label(j));
      if (!(a->subsets[tx.join(i, j)] == a->closure(a->subsets[i] | a->subsets[j])))
        throw Error("join in T(X) is not the closure of the union at " + tx.label(i) + ", " + tx.label(j));
    }
  if (!is_distributive(tx)) throw Error("T(X) is not a frame");

  a->unit = Hom{x, a->total, std::vector<Elem>(x->size()), t.base_category()};
  for (Elem e = 0; e < x->size(); ++e) a->unit.map[e] = a->element(x->order().down(e));
  if (auto r = validate_hom(a->unit); !r.ok())
    throw Error("unit is not a " + std::string(to_string(t.base_category())) + " hom: " + r.violations[0].law);
  return a;
}

/// TX together with TTX = T(TX).
struct Assemblies {
  AssemblyPtr t;
  AssemblyPtr tt;
};

inline Assemblies assemble(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  auto tx = apply_object(t, x, budget);
  auto ttx = apply_object(t, tx->total, budget);
  return {std::move(tx), std::move(ttx)};
}

/// Tf(S) = closure of the image f[S]. `tx` and `ty` must be assemblies over
/// f's source and target. With `validate`, f must be a hom of the monad's
/// category (PreconditionViolated otherwise) and Tf is checked to be a frame
/// hom.
inline Hom apply_hom(const Hom& f, const MonadAssembly& tx, const MonadAssembly& ty, bool validate = true) {
  if (tx.base != f.source || ty.base != f.target)
    throw SourceTargetMismatch("apply_hom: assemblies are not over the map's carriers");
  if (validate) {
    Hom tagged = f;
    tagged.category = tx.monad.base_category();
    if (auto r = validate_hom(tagged); !r.ok())
      throw PreconditionViolated("apply_hom: map is not a " + std::string(to_string(tagged.category)) +
                                 " hom (" + r.violations[0].law + ")");
  }
  Hom out{tx.total, ty.total, std::vector<Elem>(tx.size()), Category::Frm};
  for (Elem s = 0; s < tx.size(); ++s) {
    Bitset image(ty.base->size());
    tx.denotes(s).for_each([&](Elem e) { image.set(f(e)); });
    out.map[s] = ty.element(ty.closure(image));
  }
  if (validate) {
    if (auto r = validate_hom(out); !r.ok()) throw Error("T f is not a frame hom: " + r.violations[0].law);
  }
  return out;
}

inline const Hom& unit(const MonadAssembly& tx) { return tx.unit; }

/// m_X(D) = ⋃D. `ttx` must be the assembly over tx.total.
inline Hom multiplication(const MonadAssembly& tx, const MonadAssembly& ttx) {
  if (ttx.base != tx.total) throw SourceTargetMismatch("multiplication: TTX is not over TX");
  Hom m{ttx.total, tx.total, std::vector<Elem>(ttx.size()), Category::Frm};
  for (Elem d = 0; d < ttx.size(); ++d) {
    Bitset u(tx.base->size());
    ttx.denotes(d).for_each([&](Elem s) { u |= tx.denotes(s); });
    m.map[d] = tx.element(u);
  }
  if (auto r = validate_hom(m); !r.ok()) throw Error("multiplication is not a frame hom: " + r.violations[0].law);
  return m;
}

/// T(e_X): TX → TTX.
inline Hom t_unit(const Assemblies& a) { return apply_hom(a.t->unit, *a.t, *a.tt); }

struct LawViolation {
  std::string law;
  std::string element;
};

struct MonadLawReport {
  std::size_t size_t1 = 0;
  std::size_t size_t2 = 0;
  std::size_t ttt_enumerated = 0;
  std::size_t ttt_sampled = 0;
  bool ttt_complete = false;
  std::vector<LawViolation> violations;
  bool ok() const noexcept { return violations.empty(); }
};

namespace detail {

// Random admissible subset: close a random subset whose density is itself
// drawn from {1/2, 1/4, 1/8, 1/16}, so small and large elements both appear.
inline Bitset random_admissible(MonadInstance t, const Lattice& l, std::mt19937_64& rng) {
  const unsigned shift = static_cast<unsigned>(rng() % 4) + 1;
  Bitset s(l.size());
  for (std::size_t i = 0; i < l.size(); ++i)
    if ((rng() & ((std::uint64_t{1} << shift) - 1)) == 0) s.set(i);
  return admissible_closure(t, l, s);
}

}  // namespace detail

/// Unit laws on all of TX; associativity on TTTX elements enumerated lazily
/// in canonical order up to budget.elements, then on budget.samples
/// pseudorandom elements drawn with budget.seed.
inline MonadLawReport check_monad_laws(MonadInstance t, const LatticePtr& x, const Budget& budget = {}) {
  MonadLawReport report;
  const auto a = assemble(t, x, budget.elements);
  const MonadAssembly& tx = *a.t;
  const MonadAssembly& ttx = *a.tt;
  report.size_t1 = tx.size();
  report.size_t2 = ttx.size();
  const Hom m = multiplication(tx, ttx);
  const Hom te = t_unit(a);
  const Hom& et = ttx.unit;

  for (Elem s = 0; s < tx.size(); ++s) {
    if (m(et(s)) != s && report.violations.size() < 8)
      report.violations.push_back({"m.eT = 1", tx.total->label(s)});
    if (m(te(s)) != s && report.violations.size() < 8)
      report.violations.push_back({"m.Te = 1", tx.total->label(s)});
  }

  const Lattice& ttl = *ttx.total;
  auto associative = [&](const Bitset& d) {
    // T m_X (d): close the image of d under m_X inside TX
    Bitset image(tx.size());
    d.for_each([&](Elem e) { image.set(m(e)); });
    const Elem tm = ttx.element(ttx.closure(image));
    // m_TX (d): union of the TX-subsets d's members denote
    Bitset u(tx.size());
    d.for_each([&](Elem e) { u |= ttx.denotes(e); });
    const Elem mt = ttx.element(u);
    if (m(tm) != m(mt) && report.violations.size() < 8)
      report.violations.push_back({"m.Tm = m.mT", subset_label(ttl, d)});
  };

  bool over = false;
  for_each_admissible(t, ttl, [&](const Bitset& d) {
    if (report.ttt_enumerated >= budget.elements) {
      over = true;
      return false;
    }
    associative(d);
    ++report.ttt_enumerated;
    return true;
  });
  report.ttt_complete = !over;
  if (over) {
    std::mt19937_64 rng(budget.seed);
    for (std::size_t i = 0; i < budget.samples; ++i) {
      associative(detail::random_admissible(t, ttl, rng));
      ++report.ttt_sampled;
    }
  }
  return report;
}

struct LaxReport {
  bool holds = true;
  /// Te_X = e_TX everywhere, not just ≤.
  bool equal_everywhere = true;
  std::optional<std::string> witness;
};

/// Te_X(t) ⊆ e_TX(t) for every t in TX.
inline LaxReport check_lax_idempotent(MonadInstance t, const LatticePtr& x, std::size_t budget = Budget{}.elements) {
  const auto a = assemble(t, x, budget);
  const Hom te = t_unit(a);
  const Hom& et = a.tt->unit;
  LaxReport r;
  for (Elem s = 0; s < a.t->size(); ++s) {
    const Bitset& lhs = a.tt->denotes(te(s));
    const Bitset& rhs = a.tt->denotes(et(s));
    if (!(lhs == rhs)) r.equal_everywhere = false;
    if (!lhs.is_subset_of(rhs) && r.holds) {
      r.holds = false;
      r.witness = a.t->total->label(s);
    }
  }
  return r;
}

/// A hom TX → X is an algebra structure: a·e = 1 and a·Ta = a·m.
/// Returns the first failing law with its witness, if any.
inline std::optional<LawViolation> algebra_law_violation(const Hom& a, const Assemblies& as) {
  const MonadAssembly& tx = *as.t;
  for (Elem x = 0; x < tx.base->size(); ++x)
    if (a(tx.unit(x)) != x) return LawViolation{"a.e = 1", tx.base->label(x)};
  const Hom ta = apply_hom(a, *as.tt, tx, false);
  const Hom m = multiplication(tx, *as.tt);
  for (Elem d = 0; d < as.tt->size(); ++d)
    if (a(ta(d)) != a(m(d))) return LawViolation{"a.Ta = a.m", as.tt->total->label(d)};
  return std::nullopt;
}

struct LemmaReport {
  bool lax = false;            // Te ≤ eT
  bool te_adjoint_m = false;   // Te ⊣ m
  bool m_adjoint_et = false;   // m ⊣ eT
  bool agree = false;
  std::size_t sections_found = 0;
  /// Every hom a with a·e = 1 satisfies a ⊣ e and the algebra laws.
  bool sections_valid = true;
  bool search_exhausted = false;
  std::string note;
};

/// The three equivalent conditions Te ≤ eT, Te ⊣ m, m ⊣ eT, plus the claim
/// that every section a of the unit (a hom of the base category) is left
/// adjoint to it and is an algebra structure.
inline LemmaReport check_lemma_adjoint_chain(MonadInstance t, const LatticePtr& x, const Budget& budget = {}) {
  const auto a = assemble(t, x, budget.elements);
  const Hom te = t_unit(a);
  const Hom& et = a.tt->unit;
  const Hom m = multiplication(*a.t, *a.tt);
  LemmaReport r;
  r.lax = pointwise_leq(te, et);
  r.te_adjoint_m = check_adjoint(te, m);
  r.m_adjoint_et = check_adjoint(m, et);
  r.agree = r.lax == r.te_adjoint_m && r.te_adjoint_m == r.m_adjoint_et;

  const Lattice& tx = *a.t->total;
  std::vector<Bitset> allowed(tx.size(), Bitset::full(x->size()));
  for (Elem e = 0; e < x->size(); ++e) allowed[a.t->unit(e)] = Bitset::singleton(x->size(), e);
  const auto summary = enumerate_homs(tx, *x, t.base_category(), allowed, [&](const std::vector<Elem>& map) {
    ++r.sections_found;
    const Hom sec{a.t->total, x, map, t.base_category()};
    if (!check_adjoint(sec, a.t->unit) || algebra_law_violation(sec, a)) r.sections_valid = false;
    return true;
  }, budget.elements);
  r.search_exhausted = summary.budget_exhausted;
  if (r.sections_found == 0) r.note = "no section found";
  return r;
}

/// Naturality squares for a hom f: X → Y: Tf·e_X = e_Y·f and
/// m_Y·TTf = Tf·m_X. Returns the first failing square, if any.
inline std::optional<LawViolation> naturality_violation(const Hom& f, const Assemblies& ax, const Assemblies& ay) {
  const Hom tf = apply_hom(f, *ax.t, *ay.t);
  if (auto d = first_difference(compose(tf, ax.t->unit), compose(ay.t->unit, f)))
    return LawViolation{"Tf.e = e.f", f.source->label(*d)};
  const Hom ttf = apply_hom(tf, *ax.tt, *ay.tt);
  const Hom mx = multiplication(*ax.t, *ax.tt);
  const Hom my = multiplication(*ay.t, *ay.tt);
  if (auto d = first_difference(compose(my, ttf), compose(tf, mx)))
    return LawViolation{"m.TTf = Tf.m", ax.tt->total->label(*d)};
  return std::nullopt;
}

}  // namespace latmon
