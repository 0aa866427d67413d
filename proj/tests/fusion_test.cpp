#include <gtest/gtest.h>

#include <random>
#include <set>

#include "fuskit/catalog.hpp"
#include "fuskit/error.hpp"
#include "fuskit/fusion_system.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/quotients.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace fuskit;
using testing_util::carry;
using testing_util::cycles;
using testing_util::gen;
using testing_util::index;
using testing_util::members;

namespace {

std::set<oracle::Map> as_maps(const IsoTable& f) {
  std::set<oracle::Map> out;
  const auto& lat = *f.lattice();
  for (const auto& ref : f.all_isos()) {
    oracle::Map m;
    for (auto x : lat[ref.domain].elements()) m[x] = ref.images[x];
    out.insert(m);
  }
  return out;
}

std::size_t class_count(const FusionSystem& f) {
  std::set<std::vector<std::size_t>> classes;
  for (auto i : f.objects()) classes.insert(f.iso_class(i));
  return classes.size();
}

const Perm a16 = Perm::from_cycles(8, {{6, 7}});
const Perm b16 = Perm::from_cycles(8, {{4, 5}});
const Perm c16 = Perm::from_cycles(8, {{2, 3}});
const Perm d16 = Perm::from_cycles(8, {{0, 1}});

FusionSystem example16() {
  auto g = catalog_group("E16");
  auto one = [&](const Perm& x, const Perm& y) {
    return hom_build(gen(g, {x}), gen(g, {y}), {{g->id_of(x), g->id_of(y)}});
  };
  return fusion_generated(g, 2, {one(a16 * b16, c16), one(a16 * c16, d16)});
}

FusionSystem group_system_s4() { return fusion_from_group(catalog_group("S4"), 2); }

/// The non-central involutions of the carrier outside O_2, for D8 <= S4.
std::vector<ElementId> outer_involutions(const FusionSystem& f, std::size_t v4) {
  std::vector<ElementId> out;
  const auto& g = *f.group();
  for (ElementId x = 1; x < g.order(); ++x)
    if (g.element_order(x) == 2 && !(*f.lattice())[v4].contains(x)) out.push_back(x);
  return out;
}

}  // namespace

TEST(GroupSystems, TablesMatchOracle) {
  for (const char* name : {"C2", "C3", "D8", "Q8", "C4xC2", "S3", "S4", "A4", "SL2_3", "D8xC2", "A6", "S4xC3"}) {
    auto g = catalog_group(name);
    for (auto p : prime_divisors(g->order())) {
      auto f = fusion_from_group(g, p);
      const auto syl = oracle::greedy_sylow(*g, p);
      EXPECT_EQ(f.carrier().order(), oracle::count(syl)) << name << " " << p;
      EXPECT_EQ(f.iso_count(), oracle::group_iso_count(*g, syl)) << name << " " << p;
      EXPECT_EQ(class_count(f), oracle::fusion_class_count(*g, syl)) << name << " " << p;
      const auto s = f.carrier_index();
      EXPECT_EQ(f.isos(s, s).size(), oracle::aut_p_order(*g, syl)) << name << " " << p;
      EXPECT_TRUE(prefusion_is_fusion(f).is_fusion) << name << " " << p;
      EXPECT_TRUE(f.saturated()) << name << " " << p;
      EXPECT_EQ(f.source_group(), g);
    }
  }
}

TEST(GroupSystems, PGroupGivesInnerSystem) {
  auto g = catalog_group("D8");
  auto f = fusion_from_group(g, 2);
  EXPECT_TRUE(fusion_equal(f, inner_fusion(f.lattice(), f.carrier_index(), 2)));
  EXPECT_TRUE(f.saturated());
}

TEST(GroupSystems, RejectsNonPrime) {
  EXPECT_THROW(fusion_from_group(catalog_group("S4"), 4), Error);
}

TEST(Generated, ElementaryAbelianExample) {
  auto f = example16();
  auto g = catalog_group("E16");
  std::vector<oracle::Map> seeds{{{0, 0}, {g->id_of(a16 * b16), g->id_of(c16)}},
                                 {{0, 0}, {g->id_of(a16 * c16), g->id_of(d16)}}};
  // The carrier group of f is g itself.
  ASSERT_TRUE(f.group()->same_as(*g));
  EXPECT_EQ(as_maps(f), oracle::generated_isos(*g, seeds, 4));
  EXPECT_EQ(f.iso_count(), 71u);

  auto cls = [&](const Perm& x) { return f.iso_class(index(f, {x})); };
  std::vector<std::size_t> ab_c{index(f, {a16 * b16}), index(f, {c16})};
  std::vector<std::size_t> ac_d{index(f, {a16 * c16}), index(f, {d16})};
  std::sort(ab_c.begin(), ab_c.end());
  std::sort(ac_d.begin(), ac_d.end());
  EXPECT_EQ(cls(a16 * b16), ab_c);
  EXPECT_EQ(cls(d16), ac_d);
  std::size_t singletons = 0;
  for (auto i : f.objects())
    if ((*f.lattice())[i].order() == 2 && f.iso_class(i).size() == 1) ++singletons;
  EXPECT_EQ(singletons, 15u - 4u);
}

TEST(Generated, EmptySeedAndClosedSeed) {
  auto g = catalog_group("E16");
  auto inner = fusion_generated(g, 2, {});
  EXPECT_TRUE(fusion_equal(inner, inner_fusion(inner.lattice(), inner.carrier_index(), 2)));

  auto f = group_system_s4();
  std::vector<GroupHom> seeds;
  for (const auto& ref : f.all_isos()) seeds.push_back(f.to_hom(ref.domain, Iso{ref.codomain, ref.images}));
  EXPECT_TRUE(fusion_equal(fusion_generated(f.lattice(), 2, seeds), f));
}

TEST(Generated, RandomSeedsAreClosed) {
  auto g = catalog_group("D8xC2");
  auto lat = Lattice::build(g);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<GroupHom> seeds;
    for (int k = 0; k < 2; ++k) {
      std::uniform_int_distribution<std::size_t> pick(1, lat->size() - 2);
      const auto& q = (*lat)[pick(rng)];
      std::vector<GroupHom> targets;
      for (const auto& r : lat->subgroups())
        if (r.order() == q.order())
          for_each_isomorphism(q, r, [&](const GroupHom& h) {
            targets.push_back(h);
            return targets.size() < 64;
          });
      std::uniform_int_distribution<std::size_t> pt(0, targets.size() - 1);
      seeds.push_back(targets[pt(rng)]);
    }
    auto f = fusion_generated(lat, 2, seeds);
    EXPECT_TRUE(prefusion_is_fusion(f).is_fusion);
    for (const auto& s : seeds) {
      auto ref = f.locate(s);
      EXPECT_TRUE(f.contains(ref.domain, ref.codomain, ref.images));
    }
  }
}

TEST(HomSets, IncludeInclusions) {
  auto f = group_system_s4();
  const auto v4 = carry(f, core_p(Subgroup::whole(catalog_group("S4")), 2));
  const auto p = f.carrier_index();
  const auto homs = hom_set(f, v4, p);
  EXPECT_EQ(homs.size(), 6u);
  EXPECT_EQ(aut_maps(f, v4).size(), 6u);
  EXPECT_EQ(inner_aut_maps(f, v4).size(), 2u);
}

TEST(Saturation, NPhiAndFullyNormalized) {
  auto f = group_system_s4();
  const auto v4 = carry(f, core_p(Subgroup::whole(catalog_group("S4")), 2));
  EXPECT_TRUE(is_fully_normalized(f, v4));
  EXPECT_TRUE(is_fully_normalized(f, f.carrier_index()));

  const auto outer = outer_involutions(f, v4);
  ASSERT_EQ(outer.size(), 2u);
  const auto& g = f.group();
  auto q = Subgroup::generated(g, std::vector<ElementId>{outer[0]});
  auto r = Subgroup::generated(g, std::vector<ElementId>{outer[1]});
  std::optional<GroupHom> phi;
  for (ElementId x = 0; x < g->order() && !phi; ++x)
    if (g->conj(outer[0], x) == outer[1]) phi = conjugation_hom(x, q, r);
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ(n_phi(f, *phi), join(q, r));
  EXPECT_EQ(n_phi(f, GroupHom::identity(q)), carrier_normalizer(f, f.lattice()->index_of(q)));
}

TEST(Saturation, ElementaryAbelianExampleIsNot) {
  // P is abelian, so N_phi = P for the seed ab -> c, but Aut_F(P) is trivial.
  auto f = example16();
  const auto s = f.carrier_index();
  EXPECT_EQ(f.isos(s, s).size(), 1u);
  std::string why;
  EXPECT_FALSE(check_saturation(f, &why));
  EXPECT_FALSE(f.saturated());
}

TEST(Saturation, IntersectionOfInnerSystemsIsNot) {
  auto g = catalog_group("D8xC2");
  auto f = fusion_from_group(g, 2);
  const auto x = Perm::from_cycles(6, {{0, 1, 2, 3}});
  const auto y = Perm::from_cycles(6, {{1, 3}});
  const auto z = Perm::from_cycles(6, {{4, 5}});
  const auto q = index(f, {x, y});
  const auto r = index(f, {x * z, y});
  const auto& lat = *f.lattice();
  const auto s = lat.index_of(intersect(lat[q], lat[r]));
  ASSERT_EQ(lat[s].order(), 4u);
  auto e = fusion_intersect(restrict_system(inner_fusion(f.lattice(), q, 2), s),
                            restrict_system(inner_fusion(f.lattice(), r, 2), s));
  const auto auts = e.isos(s, s);
  ASSERT_EQ(auts.size(), 2u);
  const auto& gg = *f.group();
  const auto yy = gg.id_of(y), x2y = gg.id_of(x * x * y), x2 = gg.id_of(x * x);
  bool swap = false;
  for (const auto& iso : auts) swap = swap || (iso.images[yy] == x2y && iso.images[x2y] == yy && iso.images[x2] == x2);
  EXPECT_TRUE(swap);
  std::string why;
  EXPECT_FALSE(check_saturation(e, &why));
  EXPECT_FALSE(why.empty());
  EXPECT_FALSE(is_saturated(e));
}

TEST(Intersections, CarrierMismatch) {
  auto f = group_system_s4();
  auto a = inner_fusion(f.lattice(), f.carrier_index(), 2);
  auto b = inner_fusion(f.lattice(), carry(f, core_p(Subgroup::whole(catalog_group("S4")), 2)), 2);
  EXPECT_THROW(fusion_intersect(a, b), Error);
  EXPECT_TRUE(fusion_equal(fusion_intersect(f, a), a));
}

TEST(Transport, IdentityInnerAndRoundTrip) {
  auto f = group_system_s4();
  const auto& carrier = f.carrier();
  EXPECT_TRUE(fusion_equal(transport(f, GroupHom::identity(carrier), f.lattice()), f));
  for (auto x : carrier.elements()) {
    auto theta = conjugation_iso(x, carrier);
    EXPECT_TRUE(fusion_equal(transport(f, theta, f.lattice()), f));
  }
  // An outer automorphism of D8 moves F onto a different table.
  auto auts = automorphisms(carrier);
  bool moved = false;
  for (const auto& alpha : auts) {
    auto t = transport(f, alpha, f.lattice());
    EXPECT_TRUE(fusion_equal(transport(t, alpha.inverse(), f.lattice()), f));
    moved = moved || !fusion_equal(t, f);
  }
  EXPECT_TRUE(moved);
}

TEST(Transport, AcrossGroups) {
  auto f = fusion_from_group(catalog_group("Qd2"), 2);
  auto g = fusion_from_group(catalog_group("S4"), 2);
  auto iso = isomorphism_search(f.carrier(), g.carrier());
  ASSERT_TRUE(iso.has_value());
  auto t = transport(f, *iso);
  EXPECT_EQ(t.iso_count(), g.iso_count());
}
