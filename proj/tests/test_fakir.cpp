#include <gtest/gtest.h>

#include <random>
#include <set>

#include "latmon/corpus.hpp"
#include "latmon/fakir.hpp"
#include "latmon/stone.hpp"

using namespace latmon;

namespace {

const MonadInstance kDown = MonadInstance::downset();
const MonadInstance kIdeal = MonadInstance::ideal();

}  // namespace

TEST(Fakir, DownsetTwoChainKeepsOnlyPrincipalDownsets) {
  const auto x = chain(2);
  const auto f = fakir_object(kDown, x);
  const MonadAssembly& tx = *f->levels.t;
  ASSERT_EQ(f->carrier()->size(), 2u);
  std::vector<std::string> members;
  for (Elem v = 0; v < 2; ++v) members.push_back(tx.total->label(f->phi()(v)));
  EXPECT_EQ(members, (std::vector<std::string>{"{0}", "{0,1}"}));
}

TEST(Fakir, IdealKeepsEverything) {
  for (const auto& e : monad_corpus(kIdeal, 6)) {
    const auto f = fakir_object(kIdeal, e.lattice);
    EXPECT_EQ(f->carrier()->size(), f->levels.t->size()) << e.name;
  }
}

TEST(Fakir, OnePoint) {
  for (auto t : {kDown, kIdeal}) {
    const auto f = fakir_object(t, chain(1));
    EXPECT_EQ(f->carrier()->size(), 1u);
    EXPECT_TRUE(check_unit_iso(*f));
  }
}

TEST(Fakir, ApproximationIsEssentiallyTheIdentity) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : monad_corpus(t, 5)) {
      const auto f = fakir_object(t, e.lattice);
      EXPECT_TRUE(check_unit_iso(*f)) << t.name() << " " << e.name;
      EXPECT_TRUE(check_Tunit_iso(*f)) << t.name() << " " << e.name;
    }
}

TEST(Fakir, UnitIsIsoOnFreeCarriers) {
  for (auto t : {kDown, kIdeal})
    for (const auto& l : {chain(2), chain3(), diamond()}) {
      const auto tx = apply_object(t, l);
      EXPECT_TRUE(check_unit_iso(*fakir_object(t, tx->total)));
    }
}

TEST(Fakir, MonadLawsHold) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : monad_corpus(t, 5)) {
      const auto rep = check_fakir_laws(fakir_tower(t, e.lattice));
      EXPECT_TRUE(rep.ok()) << t.name() << " " << e.name << " " << first_failure(rep.identities)->name;
      EXPECT_EQ(rep.size_tphi, e.lattice->size());
    }
}

TEST(Fakir, MultiplicationRejectsMismatchedLevels) {
  const auto a = fakir_object(kDown, chain(2));
  const auto b = fakir_object(kDown, chain(3));
  EXPECT_THROW(fakir_mult(*a, *b), SourceTargetMismatch);
}

TEST(Fakir, FixesAlgebras) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : filter_kind(standard_corpus(6), CarrierKind::DLat)) {
      const auto w = build_algebra(t, e.lattice);
      ASSERT_TRUE(w) << e.name;
      const auto rep = fixes_algebras(*w);
      EXPECT_TRUE(rep.ok()) << t.name() << " " << e.name;
      EXPECT_EQ(rep.equalizer.evidence.size(), 4u);
    }
  EXPECT_FALSE(build_algebra(kDown, m3()));
}

TEST(PhiFunctor, IdentityGoesToIdentity) {
  const auto f = fakir_object(kDown, chain3());
  const Hom id = phi_functor(identity_hom(f->base(), Category::MLat), *f, *f);
  EXPECT_FALSE(first_difference(id, identity_hom(f->carrier())));
}

TEST(PhiFunctor, TwoChainIntoThreeChainIsItselfUpToTheUnit) {
  const auto x = chain(2);
  const auto y = chain3();
  const auto fx = fakir_object(kDown, x);
  const auto fy = fakir_object(kDown, y);
  for (const Hom& f : all_homs(x, y, Category::MLat)) {
    const Hom phi_f = phi_functor(f, *fx, *fy);
    EXPECT_FALSE(first_difference(compose(*inverse(fy->unit), phi_f, fx->unit), f));
  }
}

TEST(PhiFunctor, PreservesComposition) {
  std::vector<std::pair<LatticePtr, FakirPtr>> objs;
  for (const auto& e : monad_corpus(kDown, 4)) objs.emplace_back(e.lattice, fakir_object(kDown, e.lattice));
  std::mt19937_64 rng(0xC0FFEE);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200 && checked < 100; ++trial) {
    const auto& [x, fx] = objs[rng() % objs.size()];
    const auto& [y, fy] = objs[rng() % objs.size()];
    const auto& [z, fz] = objs[rng() % objs.size()];
    const auto fs = all_homs(x, y, Category::MLat);
    const auto gs = all_homs(y, z, Category::MLat);
    if (fs.empty() || gs.empty()) continue;
    const Hom& f = fs[rng() % fs.size()];
    const Hom& g = gs[rng() % gs.size()];
    EXPECT_FALSE(first_difference(phi_functor(compose(g, f), *fx, *fz),
                                  compose(phi_functor(g, *fy, *fz), phi_functor(f, *fx, *fy))));
    ++checked;
  }
  EXPECT_EQ(checked, 100u);
}

TEST(Stone, IdealCompactElementsArePrincipal) {
  for (const auto& e : monad_corpus(kIdeal, 6)) {
    const auto rep = stone_roundtrip(kIdeal, e.lattice);
    ASSERT_TRUE(rep.ok()) << e.name << " " << rep.failure->describe();
    EXPECT_EQ(rep.generators.carrier->size(), e.lattice->size());
    for (Elem v = 0; v < e.lattice->size(); ++v)
      EXPECT_EQ(rep.generators.inclusion(rep.unit_iso(v)), rep.tx->unit(v));
  }
}

TEST(Stone, DiamondSupercompactsAreTheFourPrincipalDownsets) {
  const auto rep = stone_roundtrip(kDown, diamond());
  ASSERT_TRUE(rep.ok());
  EXPECT_EQ(rep.tx->size(), 6u);
  ASSERT_EQ(rep.generators.carrier->size(), 4u);
  for (Elem v = 0; v < 4; ++v) EXPECT_EQ(rep.generators.inclusion(rep.unit_iso(v)), rep.tx->unit(v));
}

TEST(Stone, RoundTripOnTheCorpus) {
  for (auto t : {kDown, kIdeal})
    for (const auto& e : monad_corpus(t, 6)) {
      const auto rep = stone_roundtrip(t, e.lattice);
      EXPECT_TRUE(rep.ok()) << t.name() << " " << e.name;
      EXPECT_TRUE(rep.generators_iso);
      EXPECT_TRUE(rep.free_iso);
    }
}

TEST(Stone, NaturalitySquaresCommute) {
  for (auto t : {kDown, kIdeal}) {
    std::vector<std::pair<LatticePtr, StoneReport>> objs;
    for (const auto& e : monad_corpus(t, 4)) objs.emplace_back(e.lattice, stone_roundtrip(t, e.lattice));
    std::size_t squares = 0;
    for (const auto& [x, sx] : objs)
      for (const auto& [y, sy] : objs)
        for (const Hom& f : all_homs(x, y, t.base_category())) {
          const auto r = stone_naturality(f, sx, sy);
          EXPECT_TRUE(r.holds) << t.name() << " " << r.name << " " << r.witness;
          ++squares;
        }
    EXPECT_GE(squares, 100u) << t.name();
  }
}

TEST(Supercoherence, DownsetFreeFramesArePresentedByTheirSupercompacts) {
  std::set<std::string> yes, no;
  for (const auto& e : filter_kind(standard_corpus(6), CarrierKind::DLat))
    (check_supercoherent(kDown, e.lattice).supercoherent ? yes : no).insert(e.name);
  EXPECT_EQ(yes, (std::set<std::string>{"C2", "C3", "C4", "C5", "C6", "DB2"}));
  const auto b2 = check_supercoherent(kDown, diamond());
  EXPECT_FALSE(b2.supercoherent);
  EXPECT_EQ(b2.reason.rfind("not supercoherent as presented", 0), 0u);
}

TEST(Supercoherence, EveryFiniteDistributiveLatticeIsCoherent) {
  for (const auto& e : monad_corpus(kIdeal, 6)) EXPECT_TRUE(check_supercoherent(kIdeal, e.lattice).supercoherent) << e.name;
}

TEST(Supercoherence, FreeFramesAreSupercoherent) {
  for (const auto& l : {chain(1), chain(2), diamond(), m3(), n5()})
    EXPECT_TRUE(check_supercoherent(kDown, apply_object(kDown, l)->total).supercoherent);
}
