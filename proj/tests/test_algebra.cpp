#include <gtest/gtest.h>

#include <set>

#include "latmon/corpus.hpp"
#include "latmon/algebra.hpp"
#include "latmon/equivalence.hpp"
#include "oracles.hpp"

using namespace latmon;

namespace {

const MonadInstance kDown = MonadInstance::downset();
const MonadInstance kIdeal = MonadInstance::ideal();

Elem at(const LatticePtr& l, std::string_view label) { return *l->order().find(label); }

std::string subset_at(const AlgebraWitness& w, Elem t) { return w.tx().total->label(t); }

std::vector<CorpusEntry> lattices(std::size_t max) { return filter_kind(standard_corpus(max), CarrierKind::Lattice); }
std::vector<CorpusEntry> distributive(std::size_t max) { return filter_kind(standard_corpus(max), CarrierKind::DLat); }

AlgebraWitness algebra_of(MonadInstance t, const LatticePtr& x) { return *build_algebra(t, x); }

}  // namespace

TEST(TotallyBelow, ThreeChainHasFivePairs) {
  const auto l = chain3();
  const auto r = totally_below(*l);
  std::set<std::pair<std::string, std::string>> got;
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y)
      if (r.related(y, x)) got.emplace(l->label(y), l->label(x));
  const std::set<std::pair<std::string, std::string>> want{{"0", "m"}, {"m", "m"}, {"0", "1"}, {"m", "1"}, {"1", "1"}};
  EXPECT_EQ(got, want);
}

TEST(TotallyBelow, MatchesDefinitionOnEveryLatticeUpToSix) {
  for (const auto& e : lattices(6)) {
    const auto want = oracle::totally_below(oracle::order_of(*e.lattice));
    const auto fast = totally_below(*e.lattice);
    const auto slow = totally_below_by_down_sets(*e.lattice);
    for (Elem x = 0; x < e.lattice->size(); ++x)
      for (Elem y = 0; y < e.lattice->size(); ++y) {
        EXPECT_EQ(fast.related(y, x), want[y][x]) << e.name << " " << y << " " << x;
        EXPECT_EQ(slow.related(y, x), want[y][x]) << e.name << " " << y << " " << x;
      }
  }
}

TEST(TotallyBelow, BottomIsNeverBelowItself) {
  for (const auto& e : lattices(6)) EXPECT_FALSE(totally_below(*e.lattice).related(e.lattice->bottom(), e.lattice->bottom())) << e.name;
}

TEST(TotallyBelow, SelfRelatedAreJoinIrreduciblesOnDistributiveLattices) {
  for (const auto& e : distributive(6)) {
    const Bitset self = totally_below(*e.lattice).reflexive_part();
    EXPECT_EQ(self, e.lattice->join_irreducibles()) << e.name;
  }
  const auto b2 = diamond();
  Bitset atoms(4);
  atoms.set(at(b2, "a"));
  atoms.set(at(b2, "b"));
  EXPECT_EQ(totally_below(*b2).reflexive_part(), atoms);
}

TEST(TotallyBelow, BudgetExceeded) { EXPECT_THROW(totally_below_by_down_sets(*cube(), 5), BudgetExceeded); }

TEST(WayBelow, EqualsOrderOnEveryLatticeUpToSix) {
  for (const auto& e : lattices(6)) {
    const auto want = oracle::way_below(oracle::order_of(*e.lattice));
    const auto got = way_below(*e.lattice);
    for (Elem x = 0; x < e.lattice->size(); ++x)
      for (Elem y = 0; y < e.lattice->size(); ++y) {
        EXPECT_EQ(got.related(y, x), want[y][x]) << e.name;
        EXPECT_EQ(want[y][x], e.lattice->leq(y, x)) << e.name;
      }
  }
}

TEST(BuildAlgebra, DownsetSucceedsExactlyOnDistributiveLattices) {
  for (const auto& e : lattices(6)) {
    const auto w = build_algebra(kDown, e.lattice);
    EXPECT_EQ(w.ok(), is_distributive(*e.lattice).holds) << e.name;
  }
}

TEST(BuildAlgebra, NonDistributiveRejectionsCarryWitnesses) {
  for (const auto& l : {m3(), n5()}) {
    const auto w = build_algebra(kDown, l);
    ASSERT_FALSE(w);
    EXPECT_EQ(w.rejection().stage, "algebra");
    EXPECT_EQ(w.rejection().law, "meet preserved");
    EXPECT_FALSE(w.rejection().witness.empty());
  }
  EXPECT_EQ(build_algebra(kIdeal, m3()).rejection().law, "not distributive");
}

TEST(BuildAlgebra, JoinIsTheLeftAdjointOfTheUnit) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : distributive(5)) {
      const auto w = algebra_of(t, e.lattice);
      EXPECT_TRUE(check_adjoint(w.a, w.tx().unit)) << e.name;
      const auto tx = oracle::order_of(*w.tx().total);
      const auto x = oracle::order_of(*e.lattice);
      std::vector<std::size_t> unit(w.tx().unit.map.begin(), w.tx().unit.map.end());
      const auto left = oracle::left_adjoint_pointwise(x, tx, unit);
      ASSERT_EQ(left.size(), w.a.map.size()) << e.name;
      EXPECT_TRUE(std::equal(left.begin(), left.end(), w.a.map.begin())) << e.name;
    }
}

TEST(BuildAlgebra, IdealStructureInvertsTheUnit) {
  for (const auto& e : distributive(6)) {
    const auto w = algebra_of(kIdeal, e.lattice);
    const auto inv = inverse(w.tx().unit);
    ASSERT_TRUE(inv) << e.name;
    EXPECT_EQ(inv->map, w.a.map) << e.name;
  }
}

TEST(BuildAlgebra, MakeAlgebraRejectsANonStructure) {
  const auto levels = assemble(kDown, chain(2));
  Hom top{levels.t->total, levels.t->base, std::vector<Elem>(levels.t->size(), 1), Category::MLat};
  const auto w = make_algebra(kDown, levels, top);
  ASSERT_FALSE(w);
  EXPECT_EQ(w.rejection().law, "a.e = 1");
}

TEST(Coalgebra, ThreeChainCandidate) {
  const auto w = algebra_of(kDown, chain3());
  const auto co = build_coalgebra(w);
  ASSERT_TRUE(co) << co.rejection().describe();
  EXPECT_EQ(subset_at(w, co->c(0)), "{}");
  EXPECT_EQ(subset_at(w, co->c(1)), "{0,m}");
  EXPECT_EQ(subset_at(w, co->c(2)), "{0,m,1}");
}

TEST(Coalgebra, IdealCandidateIsPrincipal) {
  for (const auto& e : distributive(6)) {
    const auto co = build_coalgebra(algebra_of(kIdeal, e.lattice));
    ASSERT_TRUE(co) << e.name;
    EXPECT_EQ(co->c.map, co->algebra.tx().unit.map) << e.name;
  }
}

TEST(Coalgebra, OnePointCarrierFailsTopPreservation) {
  const auto co = build_coalgebra(algebra_of(kDown, chain(1)));
  ASSERT_FALSE(co);
  EXPECT_EQ(co.rejection().describe(), "coalgebra: top preserved at 0");
}

TEST(Coalgebra, DiamondFailsMeetPreservation) {
  const auto co = build_coalgebra(algebra_of(kDown, diamond()));
  ASSERT_FALSE(co);
  EXPECT_EQ(co.rejection().describe(), "coalgebra: meet preserved at (a, b)");
}

TEST(Coalgebra, CandidateIsForcedOnSmallCarriers) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : distributive(5)) {
      const auto w = algebra_of(t, e.lattice);
      const auto co = build_coalgebra(w);
      const auto all = search_coalgebras(w);
      if (co) {
        ASSERT_EQ(all.size(), 1u) << e.name;
        EXPECT_EQ(all[0].map, co->c.map) << e.name;
      } else {
        EXPECT_TRUE(all.empty()) << e.name;
      }
    }
}

TEST(Coalgebra, AdjunctionRowsHoldWhereverBuilt) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : distributive(6)) {
      const auto tw = build_tower(t, e.lattice);
      if (!tw.coalgebra) continue;
      const auto& co = *tw.coalgebra;
      EXPECT_TRUE(check_adjoint(co.c, co.algebra.a)) << e.name;
      EXPECT_FALSE(first_difference(compose(co.algebra.a, co.c), identity_hom(e.lattice))) << e.name;
      if (!tw.t1) continue;
      EXPECT_TRUE(check_adjoint(tw.t1->b, co.c)) << e.name;
      EXPECT_FALSE(first_difference(compose(tw.t1->b, co.c), identity_hom(e.lattice))) << e.name;
    }
}

TEST(T1Algebra, ThreeChainStructureIsTheLeftAdjointOfC) {
  const auto co = *build_coalgebra(algebra_of(kDown, chain3()));
  const auto t1 = build_t1_algebra(co);
  ASSERT_TRUE(t1) << t1.rejection().describe();
  EXPECT_TRUE(t1->from_left_adjoint);
  const auto& tx = co.algebra.tx();
  const auto l = chain3();
  auto b_at = [&](std::initializer_list<const char*> members) {
    Bitset s(3);
    for (const char* m : members) s.set(at(l, m));
    return l->label(t1->b(tx.element(s)));
  };
  EXPECT_EQ(b_at({}), "0");
  EXPECT_EQ(b_at({"0"}), "m");
  EXPECT_EQ(b_at({"0", "m"}), "m");
  EXPECT_EQ(b_at({"0", "m", "1"}), "1");
  EXPECT_EQ(search_t1_structures(co).size(), 1u);
}

TEST(T1Algebra, JoinFormulaDisagreesAtTheBottomSingleton) {
  const auto co = *build_coalgebra(algebra_of(kDown, chain3()));
  const Hom f = t1_formula(co);
  const auto& tx = co.algebra.tx();
  Bitset s(3);
  s.set(0);
  EXPECT_EQ(f(tx.element(s)), 0u);
  s.set(1);
  EXPECT_EQ(f(tx.element(s)), 1u);
  EXPECT_FALSE(build_t1_algebra(co)->formula_agrees);
  const auto rejected = make_t1_algebra(co, f);
  ASSERT_FALSE(rejected);
  EXPECT_EQ(rejected.rejection().law, "b -| c");
}

TEST(T1Algebra, IdealStructureSendsPrincipalIdealsToGenerators) {
  for (const auto& e : distributive(6)) {
    const auto tw = build_tower(kIdeal, e.lattice);
    ASSERT_TRUE(tw.t1) << e.name << " " << tw.rejection->describe();
    EXPECT_TRUE(tw.t1->formula_agrees) << e.name;
    for (Elem x = 0; x < e.lattice->size(); ++x) EXPECT_EQ(tw.t1->b(tw.t1->c()(x)), x);
  }
}

TEST(T1Algebra, StructureIsUniqueOnSmallCarriers) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : distributive(5)) {
      const auto tw = build_tower(t, e.lattice);
      if (!tw.t1) continue;
      const auto all = search_t1_structures(*tw.coalgebra);
      ASSERT_EQ(all.size(), 1u) << e.name;
      EXPECT_EQ(all[0].map, tw.t1->b.map) << e.name;
    }
}

TEST(Tower, DownsetPassesExactlyOnTheseObjects) {
  std::set<std::string> passed;
  std::map<std::string, std::string> rejected;
  for (const auto& e : distributive(6)) {
    const auto tw = build_tower(kDown, e.lattice);
    if (tw.t1) passed.insert(e.name);
    else rejected[e.name] = tw.rejection->describe();
  }
  const std::set<std::string> want{"C2", "C3", "C4", "C5", "C6", "DB2"};
  EXPECT_EQ(passed, want);
  EXPECT_EQ(rejected.at("C1"), "coalgebra: top preserved at 0");
  EXPECT_EQ(rejected.at("B3"), "coalgebra: meet preserved at (x, y)");
  for (const auto& [name, why] : rejected) EXPECT_EQ(why.rfind("coalgebra: ", 0), 0u) << name;
}

TEST(Presentation, AlgebraIdentitiesHoldOnTheCorpus) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : monad_corpus(t, 5)) {
      const auto w = build_algebra(t, e.lattice);
      if (!w) continue;
      const auto d = present_algebra(*w);
      EXPECT_TRUE(d.verified()) << e.name;
      EXPECT_EQ(d.evidence.size(), 4u);
    }
}

TEST(Presentation, SwappingSectionsIsCaught) {
  const auto w = algebra_of(kDown, chain3());
  auto d = present_algebra(w);
  std::swap(d.s, d.t);
  EXPECT_THROW(verify_split(d), IdentityViolated);
  auto co = *build_coalgebra(w);
  auto e = co.presentation;
  std::swap(e.s, e.t);
  EXPECT_THROW(verify_split(e), IdentityViolated);
}

TEST(Presentation, FreeAlgebraPresentsWithMultiplication) {
  for (auto t : {kDown, kIdeal})
    for (const auto& l : {chain(1), chain(2), chain3(), diamond()}) {
      const auto f = free_algebra(t, l);
      ASSERT_TRUE(f) << f.rejection().describe();
      EXPECT_TRUE(present_algebra(*f).verified());
    }
}

TEST(Presentation, SplitDiagramsAreAbsolute) {
  for (auto t : {kDown, kIdeal})
    for (const auto& l : {chain(2), chain3(), diamond()}) {
      const auto w = algebra_of(t, l);
      const auto image = functor_image(t, present_algebra(w));
      EXPECT_TRUE(image.verified()) << l->size();
      if (auto co = build_coalgebra(w)) {
        EXPECT_TRUE(functor_image(t, co->presentation).verified());
      }
    }
}

TEST(Factor, IdealMultiplicationFactorsAsTheStructure) {
  for (const auto& l : {chain3(), diamond()}) {
    const auto levels = assemble(kIdeal, l);
    const Hom r = factor_through_unit(levels, multiplication(*levels.t, *levels.tt));
    EXPECT_EQ(r.map, inverse(levels.t->unit)->map);
  }
}

TEST(Factor, DownsetMultiplicationDoesNotFactor) {
  const auto levels = assemble(kDown, chain3());
  const Hom m = multiplication(*levels.t, *levels.tt);
  EXPECT_FALSE(try_factor_through_unit(levels, m));
  EXPECT_THROW(factor_through_unit(levels, m), NotFactorable);
}

TEST(Factor, FreeAlgebraT1StructureFactors) {
  const auto x = chain3();
  const auto levels = assemble(kDown, x);
  const auto free = free_algebra(kDown, levels);
  ASSERT_TRUE(free);
  const auto co = build_coalgebra(*free);
  ASSERT_TRUE(co) << co.rejection().describe();
  const auto t1 = build_t1_algebra(*co);
  ASSERT_TRUE(t1) << t1.rejection().describe();
  const auto r = try_factor_through_unit(levels, t1->b);
  ASSERT_TRUE(r);
  EXPECT_FALSE(first_difference(compose(*r, levels.t->unit), identity_hom(x)));
  EXPECT_FALSE(first_difference(compose(levels.t->unit, *r), compose(t1->b, levels.tt->unit)));
}

TEST(Pipeline, ThreeChainEqualizerIsTheTwoChain) {
  const auto tw = build_tower(kDown, chain3());
  const auto p = main_equivalence_pipeline(*tw.t1);
  ASSERT_TRUE(p.ok()) << p.failure->describe();
  ASSERT_EQ(p.xc.carrier->size(), 2u);
  EXPECT_EQ(p.xc.carrier->labels(), (std::vector<std::string>{"m", "1"}));
  EXPECT_TRUE(are_isomorphic(p.xc.carrier->order(), chain(2)->order()));
  EXPECT_TRUE(p.isomorphic);
  EXPECT_TRUE(inverse(p.iso));
}

TEST(Pipeline, IdealEqualizerIsEverything) {
  for (const auto& e : distributive(6)) {
    const auto tw = build_tower(kIdeal, e.lattice);
    const auto p = main_equivalence_pipeline(*tw.t1);
    ASSERT_TRUE(p.ok()) << e.name;
    EXPECT_EQ(p.xc.carrier->size(), e.lattice->size());
  }
}

TEST(Pipeline, RetractionIdentitiesHoldWhereverTheTowerPasses) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : distributive(6)) {
      const auto tw = build_tower(t, e.lattice);
      if (!tw.t1) continue;
      const auto p = main_equivalence_pipeline(*tw.t1);
      ASSERT_TRUE(p.ok()) << e.name;
      EXPECT_FALSE(first_difference(compose(p.r, tw.t1->a()), compose(p.r, tw.t1->b))) << e.name;
      EXPECT_FALSE(first_difference(compose(p.r, p.xc.inclusion), identity_hom(p.xc.carrier))) << e.name;
      EXPECT_TRUE(p.coequalizer.verified());
      EXPECT_TRUE(p.equalizer.verified());
      EXPECT_EQ(p.coequalizer.evidence.size() + p.equalizer.evidence.size(), 8u);
    }
}

TEST(Transport, IdentityGoesToIdentity) {
  const auto tw = build_tower(kDown, chain(4));
  const auto p = main_equivalence_pipeline(*tw.t1);
  const auto rep = morphism_transport(identity_hom(tw.t1->algebra().carrier(), Category::MLat), p, p);
  EXPECT_TRUE(rep.ok());
  EXPECT_FALSE(first_difference(rep.fc, identity_hom(p.xc.carrier)));
}

TEST(Transport, EveryT1MorphismBetweenChainsCommutes) {
  std::vector<std::pair<T1AlgebraWitness, PipelineReport>> objs;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto tw = build_tower(kDown, n == 3 ? chain3() : chain(n));
    objs.emplace_back(*tw.t1, main_equivalence_pipeline(*tw.t1));
  }
  std::size_t morphisms = 0;
  for (const auto& [x, px] : objs)
    for (const auto& [y, py] : objs)
      for (const Hom& f : all_homs(x.algebra().carrier(), y.algebra().carrier(), Category::MLat)) {
        if (first_failure(t1_morphism_laws(f, x, y))) continue;
        ++morphisms;
        const auto rep = morphism_transport(f, px, py);
        EXPECT_TRUE(rep.ok());
        for (const auto& [z, pz] : objs)
          for (const Hom& g : all_homs(y.algebra().carrier(), z.algebra().carrier(), Category::MLat)) {
            if (first_failure(t1_morphism_laws(g, y, z))) continue;
            const auto gf = morphism_transport(compose(g, f), px, pz);
            EXPECT_FALSE(first_difference(gf.fc, compose(morphism_transport(g, py, pz).fc, rep.fc)));
          }
      }
  EXPECT_GE(morphisms, 3u);
}
