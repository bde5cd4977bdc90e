#pragma once

// JSON reports for each CLI command. Needs nlohmann/json on the include path
// (the latmon_vendor target). Keys are emitted sorted, so equal inputs give
// byte-identical output.

#include <algorithm>
#include <ostream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "latmon/algebra.hpp"
#include "latmon/corpus.hpp"
#include "latmon/dot.hpp"
#include "latmon/equivalence.hpp"
#include "latmon/fakir.hpp"
#include "latmon/latfile.hpp"
#include "latmon/monad.hpp"
#include "latmon/projective.hpp"
#include "latmon/stone.hpp"

namespace latmon::report {

using json = nlohmann::json;

inline constexpr int kSchema = 1;

enum Exit { kPass = 0, kViolation = 1, kUsage = 2 };

struct Result {
  json body;
  int exit = kPass;
};

inline json labels(const Lattice& l) { return l.labels(); }

inline json to_json(const Rejection& r) { return {{"stage", r.stage}, {"law", r.law}, {"witness", r.witness}}; }

inline json to_json(const IdentityResult& r) {
  json j{{"name", r.name}, {"holds", r.holds}};
  if (!r.holds) j["witness"] = r.witness;
  return j;
}

inline json to_json(const std::vector<IdentityResult>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(to_json(r));
  return out;
}

inline json to_json(const SplitDiagram& d) {
  return {{"kind", d.kind == SplitKind::Coequalizer ? "coequalizer" : "equalizer"},
          {"identities", to_json(d.evidence)},
          {"verified", d.verified()}};
}

/// A map as [source label, target label] pairs in source order.
inline json to_json(const Hom& h) {
  json out = json::array();
  for (Elem x = 0; x < h.source->size(); ++x) out.push_back({h.source->label(x), h.target->label(h(x))});
  return out;
}

inline json covers(const FinitePoset& p) {
  json out = json::array();
  for (const auto& [lo, hi] : p.covers()) out.push_back({p.label(lo), p.label(hi)});
  return out;
}

inline Result finish(json body, int exit, const std::string& verdict) {
  body["verdict"] = verdict;
  body["ok"] = exit == kPass;
  return {std::move(body), exit};
}

/// The monad's domain check: a lattice for the downset monad (a finite
/// meet-semilattice with top), a distributive lattice for the ideal monad.
/// Returns the reason when the carrier is outside it.
inline std::optional<std::string> outside_domain(MonadInstance t, const Carrier& c) {
  if (!c.lattice) return "the " + std::string(t.name()) + " monad needs a meet-semilattice with top";
  if (t.kind == MonadKind::Ideal && !is_distributive(*c.lattice))
    return std::string("the ideal monad needs a distributive lattice");
  return std::nullopt;
}

inline json header(const std::string& command, const Carrier& c) {
  return {{"schema", kSchema}, {"command", command}, {"object", c.file.name}, {"size", c.poset.size()}};
}

inline json header(const std::string& command, MonadInstance t, const Carrier& c) {
  json j = header(command, c);
  j["monad"] = t.name();
  return j;
}

inline Result validate(const Carrier& c) {
  json j = header("validate", c);
  j["kind"] = to_string(c.file.kind);
  j["strongest_kind"] = to_string(strongest_kind(c.poset));
  j["covers"] = covers(c.poset);
  if (c.lattice) {
    j["distributive"] = is_distributive(*c.lattice).holds;
    j["frame"] = is_frame(*c.lattice);
  }
  return finish(std::move(j), kPass, "valid " + std::string(to_string(c.file.kind)));
}

inline Result apply(MonadInstance t, const Carrier& c, std::size_t iterate, const Budget& budget) {
  json j = header("apply", t, c);
  j["iterate"] = iterate;
  json levels = json::array();
  LatticePtr cur = c.lattice;
  for (std::size_t k = 1; k <= iterate; ++k) {
    const auto tx = apply_object(t, cur, budget.elements);
    json level{{"k", k}, {"size", tx->size()}, {"elements", labels(*tx->total)}, {"covers", covers(tx->total->order())}};
    level["unit"] = to_json(tx->unit);
    levels.push_back(std::move(level));
    cur = tx->total;
  }
  j["levels"] = std::move(levels);
  return finish(std::move(j), kPass, "applied");
}

inline Result laws(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("laws", t, c);
  const auto rep = check_monad_laws(t, c.lattice, budget);
  j["size_t1"] = rep.size_t1;
  j["size_t2"] = rep.size_t2;
  j["ttt_enumerated"] = rep.ttt_enumerated;
  j["ttt_sampled"] = rep.ttt_sampled;
  j["ttt_complete"] = rep.ttt_complete;
  j["seed"] = budget.seed;
  json v = json::array();
  for (const auto& x : rep.violations) v.push_back({{"law", x.law}, {"element", x.element}});
  j["violations"] = std::move(v);
  if (!rep.ok()) return finish(std::move(j), kViolation, "monad law violated");
  return finish(std::move(j), kPass, rep.ttt_complete ? "monad laws hold" : "monad laws hold (associativity sampled)");
}

inline Result lax(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("lax", t, c);
  const auto rep = check_lax_idempotent(t, c.lattice, budget.elements);
  j["lax"] = {{"holds", rep.holds}, {"equal_everywhere", rep.equal_everywhere}};
  if (rep.witness) j["lax"]["witness"] = *rep.witness;
  const auto lemma = check_lemma_adjoint_chain(t, c.lattice, budget);
  j["lemma"] = {{"te_le_et", lemma.lax},
                {"te_adjoint_m", lemma.te_adjoint_m},
                {"m_adjoint_et", lemma.m_adjoint_et},
                {"agree", lemma.agree},
                {"sections_found", lemma.sections_found},
                {"sections_valid", lemma.sections_valid},
                {"search_exhausted", lemma.search_exhausted}};
  if (!lemma.note.empty()) j["lemma"]["note"] = lemma.note;
  if (!rep.holds) return finish(std::move(j), kViolation, "not lax idempotent");
  if (!lemma.agree || !lemma.sections_valid) return finish(std::move(j), kViolation, "lemma conditions disagree");
  return finish(std::move(j), kPass, "lax idempotent");
}

inline Result tower(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("tower", t, c);
  const auto tw = build_tower(t, c.lattice, budget.elements);
  json stages;
  if (tw.algebra) {
    stages["algebra"] = {{"a", to_json(tw.algebra->a)}, {"presentation", to_json(present_algebra(*tw.algebra))}};
  }
  if (tw.coalgebra) stages["coalgebra"] = {{"c", to_json(tw.coalgebra->c)}, {"presentation", to_json(tw.coalgebra->presentation)}};
  if (tw.t1) {
    stages["t1"] = {{"b", to_json(tw.t1->b)},
                    {"presentation", to_json(tw.t1->presentation)},
                    {"formula_agrees", tw.t1->formula_agrees},
                    {"from_left_adjoint", tw.t1->from_left_adjoint}};
  }
  if (tw.rejection) {
    j["stages"] = std::move(stages);
    j["rejection"] = to_json(*tw.rejection);
    if (!tw.algebra) {
      const std::string what = t.kind == MonadKind::Downset ? "not a frame" : "not distributive";
      return finish(std::move(j), kPass, what + "; tower stops");
    }
    return finish(std::move(j), kViolation, "tower fails at " + tw.rejection->stage);
  }
  const auto p = main_equivalence_pipeline(*tw.t1, budget.elements);
  json pipe{{"xc", p.xc.carrier ? labels(*p.xc.carrier) : json::array()}};
  if (p.xc.carrier) pipe["xc_covers"] = covers(p.xc.carrier->order());
  if (!p.r.map.empty()) pipe["r"] = to_json(p.r);
  if (!p.coequalizer.evidence.empty()) pipe["coequalizer"] = to_json(p.coequalizer);
  if (!p.equalizer.evidence.empty()) pipe["equalizer"] = to_json(p.equalizer);
  if (p.txc) {
    pipe["size_txc"] = p.txc->size();
    pipe["iso"] = to_json(p.iso);
    pipe["transport"] = to_json(p.transport);
    pipe["isomorphic"] = p.isomorphic;
  }
  stages["pipeline"] = std::move(pipe);
  j["stages"] = std::move(stages);
  if (!p.ok()) {
    j["rejection"] = to_json(*p.failure);
    return finish(std::move(j), kViolation, "pipeline fails at " + p.failure->stage);
  }
  return finish(std::move(j), kPass, "equivalence verified");
}

inline Result fakir(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("fakir", t, c);
  const auto f = fakir_tower(t, c.lattice, budget.elements);
  json members = json::array();
  for (Elem v = 0; v < f.one->carrier()->size(); ++v) members.push_back(f.one->levels.t->total->label(f.one->phi()(v)));
  j["tphi"] = std::move(members);
  const auto laws = check_fakir_laws(f);
  j["laws"] = to_json(laws.identities);
  const bool unit_iso = check_unit_iso(*f.one).has_value();
  const bool tunit_iso = check_Tunit_iso(*f.one, budget.elements).has_value();
  j["unit_iso"] = unit_iso;
  j["t_unit_iso"] = tunit_iso;
  bool fixes = true;
  if (auto w = build_algebra(t, c.lattice, budget.elements)) {
    try {
      const auto rep = fixes_algebras(*w, budget.elements);
      j["fixes_algebras"] = {{"equalizer", to_json(rep.equalizer)}, {"unit_iso", rep.unit_inverse.has_value()}};
      fixes = rep.ok();
    } catch (const IdentityViolated& e) {
      j["fixes_algebras"] = {{"failed", e.identity()}, {"witness", e.witness()}};
      fixes = false;
    }
  } else {
    j["fixes_algebras"] = nullptr;
  }
  if (!laws.ok() || !unit_iso || !tunit_iso || !fixes) return finish(std::move(j), kViolation, "fakir criteria fail");
  return finish(std::move(j), kPass, "idempotent, essentially identity");
}

/// Corpus entries the single-object commands compare against: the monad's
/// corpus up to `max` elements.
inline std::vector<CorpusEntry> neighbours(MonadInstance t, std::size_t max) {
  std::vector<CorpusEntry> out;
  for (auto& e : monad_corpus(t, max))
    if (e.lattice->size() <= max) out.push_back(std::move(e));
  return out;
}

inline Result stone(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("stone", t, c);
  const auto rep = stone_roundtrip(t, c.lattice, budget.elements);
  if (rep.generators.carrier) j["generators"] = labels(*rep.generators.carrier);
  j["generators_iso"] = rep.generators_iso;
  j["free_iso"] = rep.free_iso;
  std::size_t squares = 0;
  json failures = json::array();
  if (rep.ok()) {
    std::vector<std::pair<std::string, StoneReport>> others;
    for (const auto& e : neighbours(t, 3)) others.emplace_back(e.name, stone_roundtrip(t, e.lattice, budget.elements));
    auto scan = [&](const StoneReport& sx, const StoneReport& sy, const std::string& label) {
      for (const Hom& f : all_homs(sx.tx->base, sy.tx->base, t.base_category())) {
        ++squares;
        const auto r = stone_naturality(f, sx, sy);
        if (!r.holds && failures.size() < 8) failures.push_back({{"hom", label}, {"square", r.name}, {"witness", r.witness}});
      }
    };
    scan(rep, rep, "endo");
    for (const auto& [name, other] : others) {
      scan(rep, other, "to " + name);
      scan(other, rep, "from " + name);
    }
  } else {
    j["rejection"] = to_json(*rep.failure);
  }
  j["naturality"] = {{"squares", squares}, {"failures", failures}};
  const auto sc = check_supercoherent(t, c.lattice, budget.elements);
  j["supercoherent"] = sc.supercoherent;
  if (!sc.supercoherent) j["supercoherent_reason"] = sc.reason;
  if (!rep.ok() || !failures.empty()) return finish(std::move(j), kViolation, "stone round-trip fails");
  return finish(std::move(j), kPass, "stone round-trip verified");
}

inline Result projective(MonadInstance t, const Carrier& c, const Budget& budget) {
  json j = header("projective", t, c);
  const auto w = build_algebra(t, c.lattice, budget.elements);
  if (!w) {
    j["rejection"] = to_json(w.rejection());
    return finish(std::move(j), kPass, "no algebra structure");
  }
  std::vector<NamedAlgebra> family;
  for (const auto& e : neighbours(t, 5))
    if (auto a = build_algebra(t, e.lattice, budget.elements)) family.push_back({e.name, *a});
  const auto co = has_coalgebra_structure(*w);
  json cj{{"holds", co.holds}, {"searched", co.searched}, {"alternatives", co.alternatives}, {"search_consistent", co.search_consistent}};
  if (co.rejection) cj["rejection"] = to_json(*co.rejection);
  j["coalgebra"] = std::move(cj);
  const auto r = find_retraction(*w);
  j["retraction"] = {{"found", r.has_value()}, {"canonical", r && r->canonical}};
  const auto lift = lifting_property(*w, family);
  json failures = json::array();
  for (const auto& f : lift.failures) {
    if (failures.size() >= 8) break;
    json g = json::array();
    for (Elem x : f.g) g.push_back(x);
    failures.push_back({{"target", f.target}, {"g", g}});
  }
  j["lifting"] = {{"family", family.size()}, {"morphisms", lift.morphisms}, {"lifted", lift.lifted}, {"failures", failures}};
  const bool agree = co.holds == r.has_value() && co.holds == lift.ok();
  j["agree"] = agree;
  if (!agree || !co.search_consistent) return finish(std::move(j), kViolation, "projectivity criteria disagree");
  return finish(std::move(j), kPass, co.holds ? "projective (relative to family)" : "not projective");
}

inline Result corpus(std::size_t max_size) {
  json j{{"schema", kSchema}, {"command", "corpus"}, {"max_size", max_size}};
  json entries = json::array();
  for (const auto& e : standard_corpus(max_size)) {
    entries.push_back({{"name", e.name},
                       {"size", e.poset.size()},
                       {"kind", to_string(strongest_kind(e.poset))},
                       {"provenance", e.provenance == Provenance::Named ? "named" : "enumerated"}});
  }
  j["entries"] = std::move(entries);
  return finish(std::move(j), kPass, "corpus listed");
}

inline Result dot(const Carrier& c, const std::string& relation) {
  json j = header("dot", c);
  j["relation"] = relation;
  j["dot"] = relation == "order" ? emit_dot_order(c.file.name, c.poset) : emit_dot_totally_below(c.file.name, *c.lattice);
  return finish(std::move(j), kPass, "emitted");
}

/// Indented "key: value" rendering of a report for terminal output.
inline void render_text(std::ostream& out, const json& j, int depth = 0) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    const std::string key = j.is_object() ? it.key() + ":" : "-";
    const bool scalar_array = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) {
      return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); }));
    });
    if (v.is_primitive()) {
      out << pad << key << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    } else if (scalar_array || v.empty()) {
      out << pad << key << ' ' << v.dump() << '\n';
    } else {
      out << pad << key << '\n';
      render_text(out, v, depth + 1);
    }
  }
}

}  // namespace latmon::report
