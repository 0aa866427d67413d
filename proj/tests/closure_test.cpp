#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fuskit/catalog.hpp"
#include "fuskit/closure_analysis.hpp"
#include "fuskit/error.hpp"
#include "fuskit/fusion_system.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "fuskit/subsystems.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace fuskit;
using testing_util::carry;
using testing_util::group_system;
using testing_util::members;

namespace {

struct S4Fixture {
  FusionSystem f = group_system("S4", 2);
  std::size_t v4 = carry(f, core_p(Subgroup::whole(catalog_group("S4")), 2));
  std::size_t p = f.carrier_index();
  std::size_t z = f.lattice()->index_of(center(f.carrier()));
};

std::vector<FusionSystem> saturated_corpus() {
  std::vector<FusionSystem> out;
  for (const char* name : {"C2", "C3", "D8", "Q8", "C4xC2", "S3", "S4", "A4", "SL2_3", "A6", "Qd2", "S4xC3", "D8xC2"}) {
    auto g = catalog_group(name);
    for (auto p : prime_divisors(g->order())) out.push_back(fusion_from_group(g, p));
  }
  return out;
}

/// Strong closure straight from the definition: x phi in Q for every
/// x in Q and every morphism phi defined on <x>.
bool strongly_closed_brute(const FusionSystem& f, std::size_t q) {
  const auto& lat = *f.lattice();
  for (auto r : f.objects())
    for (const auto& iso : f.isos_from(r)) {
      bool ok = true;
      lat[r].members().for_each([&](std::size_t x) {
        if (lat[q].contains(static_cast<ElementId>(x)) && !lat[q].contains(iso.images[x])) ok = false;
      });
      if (!ok) return false;
    }
  return true;
}

bool weakly_closed_brute(const FusionSystem& f, std::size_t q) { return f.iso_class(q).size() == 1; }

}  // namespace

TEST(Closure, S4Examples) {
  S4Fixture s;
  EXPECT_TRUE(is_strongly_closed(s.f, s.v4));
  EXPECT_TRUE(is_normal_subgroup(s.f, s.v4));
  EXPECT_FALSE(is_normal_subgroup(s.f, s.p));
  EXPECT_TRUE(is_normal_subgroup(s.f, 0));
  EXPECT_FALSE(is_strongly_closed(s.f, s.z));
  EXPECT_EQ(o_p(s.f), (*s.f.lattice())[s.v4]);

  auto c = classify(s.f, s.p);
  EXPECT_TRUE(c.centric);
  EXPECT_TRUE(c.fully_normalized);
  EXPECT_TRUE(c.strongly_closed);
  EXPECT_FALSE(c.normal_in_F);
}

TEST(Closure, ClosednessMatchesDefinitions) {
  for (const auto& f : saturated_corpus())
    for (auto q : f.objects()) {
      EXPECT_EQ(is_strongly_closed(f, q), strongly_closed_brute(f, q)) << f.group()->name() << " " << q;
      EXPECT_EQ(is_weakly_closed(f, q), weakly_closed_brute(f, q)) << f.group()->name() << " " << q;
    }
}

TEST(Closure, FiveNormalityCriteriaAgree) {
  std::size_t systems = 0;
  for (const auto& f : saturated_corpus()) {
    ASSERT_TRUE(f.saturated());
    ++systems;
    const auto fncr = fncr_subgroups(f);
    for (auto q : f.objects()) {
      const bool by_definition = is_normal_by_definition(f, q);
      const bool criterion = is_normal_subgroup(f, q);
      bool in_every_fncr = is_strongly_closed(f, q);
      for (auto r : fncr) in_every_fncr = in_every_fncr && (*f.lattice())[r].contains((*f.lattice())[q]);
      const bool below_op = o_p(f).contains((*f.lattice())[q]);
      const bool inner_normal = is_strongly_closed(f, q) && is_normal_subsystem(f, inner_system(f, q));
      EXPECT_EQ(criterion, by_definition) << f.group()->name() << " q=" << q;
      EXPECT_EQ(in_every_fncr, by_definition) << f.group()->name() << " q=" << q;
      EXPECT_EQ(below_op && is_strongly_closed(f, q), by_definition) << f.group()->name() << " q=" << q;
      EXPECT_EQ(inner_normal, by_definition) << f.group()->name() << " q=" << q;
    }
  }
  EXPECT_GE(systems, 12u);
}

TEST(Closure, OpMatchesGroupOracle) {
  for (const char* name : {"S3", "S4", "A4", "SL2_3", "A6", "S4xC3", "D8xC2"}) {
    auto g = catalog_group(name);
    for (auto p : prime_divisors(g->order())) {
      auto f = fusion_from_group(g, p);
      const auto tower = oracle::op_tower(*g, oracle::greedy_sylow(*g, p), p);
      const auto& op = tower.size() > 1 ? tower[1] : tower[0];
      EXPECT_EQ(o_p(f).order(), oracle::count(op)) << name << " " << p;
    }
  }
}

TEST(Closure, ProductsOfStronglyClosedAreStronglyClosed) {
  for (const auto& f : saturated_corpus()) {
    std::vector<std::size_t> strong;
    for (auto q : f.objects())
      if (is_strongly_closed(f, q)) strong.push_back(q);
    for (auto a : strong)
      for (auto b : strong) {
        auto prod = set_product((*f.lattice())[a], (*f.lattice())[b]);
        EXPECT_TRUE(is_strongly_closed(f, f.lattice()->index_of(prod))) << f.group()->name();
      }
  }
}

TEST(Closure, NotSaturatedErrors) {
  auto g = catalog_group("E16");
  auto f = fusion_from_group(g, 2);
  EXPECT_TRUE(f.saturated());
  auto e = fusion_generated(g, 2,
                            {hom_build(testing_util::gen(g, {Perm::from_cycles(8, {{6, 7}, {4, 5}})}),
                                       testing_util::gen(g, {Perm::from_cycles(8, {{2, 3}})}),
                                       {{g->id_of(Perm::from_cycles(8, {{6, 7}, {4, 5}})),
                                         g->id_of(Perm::from_cycles(8, {{2, 3}}))}})});
  ASSERT_FALSE(e.saturated());
  try {
    o_p(e);
    ADD_FAILURE();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kNotSaturated);
  }
  EXPECT_THROW(is_normal_subgroup(e, 0), Error);
  EXPECT_NO_THROW(is_normal_subgroup(e, 0, false));
  EXPECT_THROW(alperin_generators(e), Error);
}

TEST(Center, Examples) {
  auto c2 = group_system("C2", 2);
  EXPECT_EQ(center_of_fusion(c2), c2.carrier());
  S4Fixture s;
  EXPECT_TRUE(center_of_fusion(s.f).is_trivial());
  auto d8 = group_system("D8", 2);
  EXPECT_EQ(center_of_fusion(d8), center(d8.carrier()));
}

TEST(CentralSeries, Examples) {
  S4Fixture s;
  auto v = strongly_closed_central_series(s.f, s.v4, SeriesMode::kStrong);
  ASSERT_TRUE(v.has_value());
  ASSERT_EQ(v->size(), 2u);
  EXPECT_TRUE((*v)[0].is_trivial());
  EXPECT_EQ((*v)[1], (*s.f.lattice())[s.v4]);
  EXPECT_FALSE(strongly_closed_central_series(s.f, s.z, SeriesMode::kStrong).has_value());
  auto one = strongly_closed_central_series(s.f, 0, SeriesMode::kStrong);
  ASSERT_TRUE(one.has_value());
  EXPECT_EQ(one->size(), 1u);
}

TEST(Alperin, S4Generators) {
  S4Fixture s;
  auto gens = alperin_generators(s.f);
  ASSERT_EQ(gens.size(), 2u);
  std::set<std::size_t> where{gens[0].subgroup, gens[1].subgroup};
  EXPECT_EQ(where, (std::set<std::size_t>{s.v4, s.p}));
  for (const auto& gnr : gens) EXPECT_EQ(gnr.automorphisms.size(), gnr.subgroup == s.v4 ? 6u : 4u);
}

TEST(Alperin, A6AndInner) {
  auto a6 = group_system("A6", 2);
  auto gens = alperin_generators(a6);
  ASSERT_EQ(gens.size(), 3u);
  std::size_t fours = 0;
  for (const auto& gnr : gens) {
    const auto& q = (*a6.lattice())[gnr.subgroup];
    if (q.order() == 4) {
      ++fours;
      EXPECT_EQ(gnr.automorphisms.size(), 6u);
    } else {
      EXPECT_EQ(gnr.subgroup, a6.carrier_index());
    }
  }
  EXPECT_EQ(fours, 2u);
  auto d8 = group_system("D8", 2);
  auto inner = alperin_generators(d8);
  ASSERT_EQ(inner.size(), 1u);
  EXPECT_EQ(inner[0].subgroup, d8.carrier_index());
}

TEST(Alperin, RegenerationAndDecomposition) {
  for (const auto& f : saturated_corpus()) {
    EXPECT_TRUE(fusion_equal(alperin_regenerate(f), f)) << f.group()->name();
    for (const auto& iso : f.all_isos()) {
      auto steps = alperin_decompose(f, iso);
      // Replay the decomposition.
      const auto& lat = *f.lattice();
      Images m(f.group()->order(), kNoElement);
      lat[iso.domain].members().for_each([&](std::size_t x) { m[x] = static_cast<ElementId>(x); });
      std::size_t at = iso.domain;
      for (const auto& st : steps) {
        ASSERT_EQ(st.from, at);
        lat[iso.domain].members().for_each([&](std::size_t x) { m[x] = st.automorphism[m[x]]; });
        at = st.to;
      }
      EXPECT_EQ(at, iso.codomain);
      lat[iso.domain].members().for_each([&](std::size_t x) { EXPECT_EQ(m[x], iso.images[x]); });
    }
  }
}

TEST(Alperin, DecompositionExamples) {
  S4Fixture s;
  const auto& lat = *s.f.lattice();
  // Identity gives no steps.
  Images id(s.f.group()->order(), kNoElement);
  lat[s.z].members().for_each([&](std::size_t x) { id[x] = static_cast<ElementId>(x); });
  EXPECT_TRUE(alperin_decompose(s.f, IsoRef{static_cast<std::uint32_t>(s.z), static_cast<std::uint32_t>(s.z), id})
                  .empty());
  // Z(P) fuses into V4 only through Aut_F(V4): one step there.
  for (const auto& iso : s.f.isos_from(s.z)) {
    if (iso.codomain == s.z) continue;
    auto steps = alperin_decompose(s.f, IsoRef{static_cast<std::uint32_t>(s.z), iso.codomain, iso.images});
    ASSERT_EQ(steps.size(), 1u);
    EXPECT_EQ(steps[0].subgroup, s.v4);
  }
}
