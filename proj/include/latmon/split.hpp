#pragma once

#include <concepts>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "latmon/error.hpp"
#include "latmon/hom.hpp"
#include "latmon/monad.hpp"

namespace latmon {

/// Outcome of checking one equation between composites.
struct IdentityResult {
  std::string name;
  bool holds = true;
  std::string witness;
};

/// lhs = rhs pointwise; the witness is the first differing source element.
inline IdentityResult check_identity(std::string name, const Hom& lhs, const Hom& rhs) {
  IdentityResult r{std::move(name), true, {}};
  if (lhs.source != rhs.source || lhs.target != rhs.target) {
    r.holds = false;
    r.witness = "carriers differ";
  } else if (auto d = first_difference(lhs, rhs)) {
    r.holds = false;
    r.witness = lhs.source->label(*d);
  }
  return r;
}

/// Same, building the composites lazily so that maps which do not compose
/// become a failed identity rather than an exception.
template <std::invocable Lhs, std::invocable Rhs>
IdentityResult check_identity(std::string name, Lhs&& lhs, Rhs&& rhs) {
  try {
    return check_identity(std::move(name), Hom(lhs()), Hom(rhs()));
  } catch (const SourceTargetMismatch&) {
    return {std::move(name), false, "maps do not compose"};
  }
}

inline const IdentityResult* first_failure(const std::vector<IdentityResult>& rs) {
  for (const auto& r : rs)
    if (!r.holds) return &r;
  return nullptr;
}

enum class SplitKind { Coequalizer, Equalizer };

/// A split coequalizer f, g: A → B, q: B → C with s: C → B, t: B → A, or a
/// split equalizer q: E → A, f, g: A → B with s: A → E, t: B → A.
struct SplitDiagram {
  SplitKind kind = SplitKind::Coequalizer;
  Hom f, g, t, q, s;
  std::vector<IdentityResult> evidence;

  bool verified() const { return !evidence.empty() && !first_failure(evidence); }
};

/// The four defining identities, checked pointwise.
inline std::vector<IdentityResult> split_identities(const SplitDiagram& d) {
  const auto& [kind, f, g, t, q, s, ev] = d;
  (void)ev;
  if (kind == SplitKind::Coequalizer)
    return {
        check_identity("q.f = q.g", [&] { return compose(q, f); }, [&] { return compose(q, g); }),
        check_identity("q.s = 1", [&] { return compose(q, s); }, [&] { return identity_hom(q.target); }),
        check_identity("f.t = 1", [&] { return compose(f, t); }, [&] { return identity_hom(f.target); }),
        check_identity("s.q = g.t", [&] { return compose(s, q); }, [&] { return compose(g, t); }),
    };
  return {
      check_identity("f.q = g.q", [&] { return compose(f, q); }, [&] { return compose(g, q); }),
      check_identity("s.q = 1", [&] { return compose(s, q); }, [&] { return identity_hom(q.source); }),
      check_identity("t.f = 1", [&] { return compose(t, f); }, [&] { return identity_hom(f.source); }),
      check_identity("q.s = t.g", [&] { return compose(q, s); }, [&] { return compose(t, g); }),
  };
}

/// Fills in the evidence; throws IdentityViolated on the first failure.
inline SplitDiagram verify_split(SplitDiagram d) {
  d.evidence = split_identities(d);
  if (const auto* bad = first_failure(d.evidence)) throw IdentityViolated(bad->name, bad->witness);
  return d;
}

/// T applied to all five maps, with one assembly per distinct carrier. Split
/// (co)equalizers are absolute, so the image verifies whenever d does.
inline SplitDiagram functor_image(MonadInstance t, const SplitDiagram& d, std::size_t budget = Budget{}.elements) {
  std::map<const Lattice*, AssemblyPtr> assemblies;
  auto over = [&](const LatticePtr& l) -> const MonadAssembly& {
    auto& a = assemblies[l.get()];
    if (!a) a = apply_object(t, l, budget);
    return *a;
  };
  auto image = [&](const Hom& h) { return apply_hom(h, over(h.source), over(h.target)); };
  SplitDiagram out{d.kind, image(d.f), image(d.g), image(d.t), image(d.q), image(d.s), {}};
  out.evidence = split_identities(out);
  return out;
}

}  // namespace latmon
