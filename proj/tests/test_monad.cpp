#include <gtest/gtest.h>

#include <random>
#include <set>

#include "latmon/corpus.hpp"
#include "latmon/monad.hpp"
#include "oracles.hpp"

using namespace latmon;

namespace {

const MonadInstance kDown = MonadInstance::downset();
const MonadInstance kIdeal = MonadInstance::ideal();

std::vector<oracle::Mask> masks_of(const MonadAssembly& a) {
  std::vector<oracle::Mask> out;
  for (const auto& s : a.subsets) {
    oracle::Mask m = 0;
    s.for_each([&](Elem x) { m |= oracle::Mask{1} << x; });
    out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(ApplyObject, DownsetOfSingletonIsTwoChain) {
  auto t = apply_object(kDown, chain(1));
  ASSERT_EQ(t->size(), 2u);
  EXPECT_TRUE(t->denotes(0).none());
  EXPECT_EQ(t->unit(0), 1u);
  EXPECT_TRUE(are_isomorphic(t->total->order(), chain(2)->order()));
}

TEST(ApplyObject, DownsetOfDiamondHasSixElements) {
  EXPECT_EQ(apply_object(kDown, diamond())->size(), 6u);
}

TEST(ApplyObject, IdealMonadRejectsNonDistributive) {
  EXPECT_THROW(apply_object(kIdeal, m3()), PreconditionViolated);
}

TEST(ApplyObject, BudgetExceeded) {
  try {
    apply_object(kDown, cube(), 10);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.count(), 11u);
  }
}

TEST(ApplyObjectProperty, ElementsAreExactlyTheAdmissibleSubsetsInCanonicalOrder) {
  for (const auto& e : standard_corpus(6)) {
    const auto le = oracle::order_of(*e.lattice);
    auto expect = oracle::down_sets(le);
    auto t = apply_object(kDown, e.lattice);
    auto got = masks_of(*t);
    EXPECT_EQ(std::set<oracle::Mask>(got.begin(), got.end()), std::set<oracle::Mask>(expect.begin(), expect.end()));
    EXPECT_EQ(got.size(), expect.size());
    for (std::size_t i = 1; i < t->size(); ++i) EXPECT_TRUE(canonical_less(t->subsets[i - 1], t->subsets[i]));
    EXPECT_TRUE(is_frame(*t->total)) << e.name;
    if (!is_distributive(*e.lattice)) continue;
    auto ti = apply_object(kIdeal, e.lattice);
    auto ideals = oracle::ideals(le);
    auto goti = masks_of(*ti);
    EXPECT_EQ(std::set<oracle::Mask>(goti.begin(), goti.end()), std::set<oracle::Mask>(ideals.begin(), ideals.end()));
    // principal-ideal collapse
    EXPECT_TRUE(inverse(ti->unit)) << e.name;
  }
}

TEST(ApplyObjectProperty, DownsetOfChainHasOneMoreElement) {
  for (std::size_t n = 1; n <= 6; ++n) EXPECT_EQ(apply_object(kDown, chain(n))->size(), n + 1);
}

TEST(ApplyHom, IdentityGoesToIdentity) {
  auto t = apply_object(kDown, diamond());
  auto id = identity_hom(diamond(), Category::MLat);
  id.source = id.target = t->base;
  EXPECT_EQ(apply_hom(id, *t, *t).map, identity_hom(t->total).map);
}

TEST(ApplyHom, SkipMiddleEmbeddingOnDownSets) {
  auto c2 = chain(2), c3 = chain3();
  Hom f{c2, c3, {0, 2}, Category::MLat};
  auto t2 = apply_object(kDown, c2), t3 = apply_object(kDown, c3);
  auto tf = apply_hom(f, *t2, *t3);
  Bitset full2 = Bitset::full(2);
  EXPECT_EQ(t3->denotes(tf(t2->element(full2))), Bitset::full(3));
  EXPECT_EQ(t3->denotes(tf(t2->element(Bitset::singleton(2, 0)))), Bitset::singleton(3, 0));
}

TEST(ApplyHom, RejectsNonHom) {
  auto b = diamond();
  auto t = apply_object(kDown, b);
  Hom f{b, b, {3, 3, 3, 3}, Category::Poset};
  EXPECT_NO_THROW(apply_hom(f, *t, *t));  // top map preserves meets and top
  Hom g{b, b, {0, 0, 0, 0}, Category::Poset};
  EXPECT_THROW(apply_hom(g, *t, *t), PreconditionViolated);
}

TEST(ApplyHomProperty, FunctorialOnRandomCorpusPairs) {
  std::mt19937_64 rng(11);
  std::vector<LatticePtr> objs;
  for (const auto& e : standard_corpus(5)) objs.push_back(e.lattice);
  std::vector<AssemblyPtr> ts;
  for (const auto& o : objs) ts.push_back(apply_object(kDown, o));
  int checked = 0;
  for (int trial = 0; trial < 2000 && checked < 100; ++trial) {
    const auto i = rng() % objs.size(), j = rng() % objs.size(), k = rng() % objs.size();
    auto fs = all_homs(objs[i], objs[j], Category::MLat, 64);
    auto gs = all_homs(objs[j], objs[k], Category::MLat, 64);
    if (fs.empty() || gs.empty()) continue;
    const auto& f = fs[rng() % fs.size()];
    const auto& g = gs[rng() % gs.size()];
    auto lhs = apply_hom(compose(g, f), *ts[i], *ts[k]);
    auto rhs = compose(apply_hom(g, *ts[j], *ts[k]), apply_hom(f, *ts[i], *ts[j]));
    ASSERT_EQ(lhs.map, rhs.map);
    ++checked;
  }
  EXPECT_EQ(checked, 100);
}

TEST(Multiplication, UnionOnDownSetsOfTwoChain) {
  auto a = assemble(kDown, chain(2));
  auto m = multiplication(*a.t, *a.tt);
  // the down-set {∅, {0}} of 𝔇X
  Bitset d(a.t->size());
  d.set(a.t->element(Bitset(2)));
  d.set(a.t->element(Bitset::singleton(2, 0)));
  EXPECT_EQ(a.t->denotes(m(a.tt->element(d))), Bitset::singleton(2, 0));
}

TEST(MultiplicationProperty, FrameHomOnCorpus) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : monad_corpus(t, 5)) {
      auto a = assemble(t, e.lattice);
      EXPECT_TRUE(validate_hom(multiplication(*a.t, *a.tt)).ok()) << e.name;
      EXPECT_TRUE(validate_hom(a.t->unit).ok()) << e.name;
    }
}

TEST(MonadLaws, SingletonFullyEnumerated) {
  for (auto t : {kDown, kIdeal}) {
    auto r = check_monad_laws(t, chain(1));
    EXPECT_TRUE(r.ok());
    EXPECT_TRUE(r.ttt_complete);
  }
}

TEST(MonadLaws, TwoChainSizes) {
  auto r = check_monad_laws(kDown, chain(2));
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.size_t1, 3u);
  EXPECT_EQ(r.size_t2, 4u);
  EXPECT_EQ(r.ttt_enumerated, 5u);
}

TEST(MonadLaws, IdealCollapse) {
  for (const auto& e : monad_corpus(kIdeal, 6)) {
    auto r = check_monad_laws(kIdeal, e.lattice);
    EXPECT_TRUE(r.ok()) << e.name;
    EXPECT_EQ(r.size_t1, e.lattice->size());
    EXPECT_EQ(r.size_t2, e.lattice->size());
    EXPECT_EQ(r.ttt_enumerated, e.lattice->size());
  }
}

TEST(MonadLaws, SampledPastBudget) {
  Budget b;
  b.elements = 50'000;
  b.samples = 50;
  auto small = b;
  small.elements = 4;
  auto r = check_monad_laws(kDown, chain(2), small);
  EXPECT_TRUE(r.ok());
  EXPECT_FALSE(r.ttt_complete);
  EXPECT_EQ(r.ttt_enumerated, 4u);
  EXPECT_EQ(r.ttt_sampled, 50u);
}

TEST(Lax, DownsetAndIdeal) {
  for (const auto& e : monad_corpus(kDown, 6)) EXPECT_TRUE(check_lax_idempotent(kDown, e.lattice).holds) << e.name;
  for (const auto& e : monad_corpus(kIdeal, 6)) {
    auto r = check_lax_idempotent(kIdeal, e.lattice);
    EXPECT_TRUE(r.holds && r.equal_everywhere) << e.name;
  }
  EXPECT_FALSE(check_lax_idempotent(kDown, chain(2)).equal_everywhere);
}

TEST(LemmaAdjointChain, ThreeChainAllTrue) {
  auto r = check_lemma_adjoint_chain(kDown, chain3());
  EXPECT_TRUE(r.lax && r.te_adjoint_m && r.m_adjoint_et && r.agree);
  EXPECT_EQ(r.sections_found, 1u);
  EXPECT_TRUE(r.sections_valid);
}

TEST(LemmaAdjointChain, M3HasNoSection) {
  auto r = check_lemma_adjoint_chain(kDown, m3());
  EXPECT_TRUE(r.agree);
  EXPECT_EQ(r.sections_found, 0u);
  EXPECT_EQ(r.note, "no section found");
}

TEST(LemmaAdjointChain, IdealAllTrue) {
  for (const auto& e : monad_corpus(kIdeal, 6)) {
    auto r = check_lemma_adjoint_chain(kIdeal, e.lattice);
    EXPECT_TRUE(r.lax && r.te_adjoint_m && r.m_adjoint_et) << e.name;
    EXPECT_EQ(r.sections_found, 1u) << e.name;
    EXPECT_TRUE(r.sections_valid) << e.name;
  }
}

TEST(NaturalityProperty, UnitAndMultiplicationOnCorpusHoms) {
  for (auto t : {kDown, kIdeal}) {
    auto objs = monad_corpus(t, 4);
    std::vector<Assemblies> as;
    for (const auto& e : objs) as.push_back(assemble(t, e.lattice));
    for (std::size_t i = 0; i < objs.size(); ++i)
      for (std::size_t j = 0; j < objs.size(); ++j)
        for (const auto& f : all_homs(objs[i].lattice, objs[j].lattice, t.base_category())) {
          auto v = naturality_violation(f, as[i], as[j]);
          EXPECT_FALSE(v) << objs[i].name << " -> " << objs[j].name << ": " << v->law;
        }
  }
}
