#include <gtest/gtest.h>

#include <random>

#include "fuskit/catalog.hpp"
#include "fuskit/error.hpp"
#include "fuskit/homomorphism.hpp"
#include "fuskit/lattice.hpp"
#include "fuskit/solubility.hpp"
#include "fuskit/subgroup_ops.hpp"
#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace fuskit;
using testing_util::cycles;
using testing_util::gen;
using testing_util::members;

#define EXPECT_FUSKIT_ERROR(stmt, ecode)                     \
  do {                                                       \
    try {                                                    \
      stmt;                                                  \
      ADD_FAILURE() << "no error thrown";                    \
    } catch (const Error& e) {                               \
      EXPECT_EQ(e.code(), ecode) << e.what();                \
    }                                                        \
  } while (0)

namespace {

Perm random_perm(std::mt19937& rng, std::size_t n) {
  std::vector<Point> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Point>(i);
  std::shuffle(v.begin(), v.end(), rng);
  return Perm(v);
}

SubgroupArgs with_p(std::size_t p) {
  SubgroupArgs args;
  args.p = p;
  return args;
}

}  // namespace

TEST(Perm, ComposesLeftToRight) {
  auto a = cycles(3, {{0, 1}});
  auto b = cycles(3, {{1, 2}});
  // 0 -a-> 1 -b-> 2
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_EQ((b * a)[0], 1u);
  EXPECT_EQ(a.to_cycle_string(), "(0 1)");
  EXPECT_TRUE(Perm::identity(5).is_identity());
}

TEST(Perm, RejectsNonPermutations) {
  EXPECT_FUSKIT_ERROR(Perm({0, 0, 1}), ErrorCode::kNotAPermutation);
  EXPECT_FUSKIT_ERROR(Perm({0, 3}), ErrorCode::kNotAPermutation);
}

TEST(Perm, RandomGroupAxioms) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_perm(rng, 7), b = random_perm(rng, 7), c = random_perm(rng, 7);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a * a.inverse()).is_identity());
    EXPECT_EQ((a * b).inverse(), b.inverse() * a.inverse());
  }
}

TEST(Group, OrdersFromGenerators) {
  auto d8 = Group::from_generators(4, {cycles(4, {{0, 1, 2, 3}}), cycles(4, {{0, 2}})}, "D8");
  EXPECT_EQ(d8->order(), 8u);
  auto one = Group::from_generators(1, {}, "1");
  EXPECT_EQ(one->order(), 1u);
  auto s4 = Group::from_generators(4, {cycles(4, {{0, 1}}), cycles(4, {{0, 1, 2, 3}})}, "S4");
  EXPECT_EQ(s4->order(), 24u);
  EXPECT_TRUE(s4->element(0).is_identity());
}

TEST(Group, OrderCap) {
  EXPECT_FUSKIT_ERROR(Group::from_generators(6, {cycles(6, {{0, 1}}), cycles(6, {{0, 1, 2, 3, 4, 5}})}, "S6", 100),
                      ErrorCode::kOrderCapExceeded);
}

TEST(Group, MultiplicationMatchesPerms) {
  auto g = catalog_group("SL2_3");
  std::mt19937 rng(11);
  std::uniform_int_distribution<ElementId> pick(0, static_cast<ElementId>(g->order() - 1));
  for (int i = 0; i < 300; ++i) {
    auto a = pick(rng), b = pick(rng);
    EXPECT_EQ(g->element(g->mul(a, b)), g->element(a) * g->element(b));
    EXPECT_EQ(g->element(g->conj(a, b)), g->element(b).inverse() * g->element(a) * g->element(b));
  }
}

TEST(Lattice, SubgroupCountsMatchBruteForce) {
  for (const char* name : {"C2", "C3", "C4", "D8", "Q8", "C4xC2", "S3", "S4", "A4", "SL2_3", "D8xC2"}) {
    auto g = catalog_group(name);
    const auto brute = oracle::brute_subgroups(*g, 3);
    auto subs = subgroups(g);
    ASSERT_EQ(subs.size(), brute.size()) << name;
    for (const auto& s : subs) EXPECT_TRUE(brute.count(members(s))) << name;
  }
}

TEST(Lattice, ElementaryAbelianSixteen) {
  auto lat = Lattice::build(catalog_group("E16"));
  EXPECT_EQ(lat->size(), oracle::subspace_count(4, 2));
  EXPECT_EQ(lat->size(), 67u);
}

TEST(Lattice, CanonicalOrderAndLocalData) {
  auto g = catalog_group("S4");
  auto lat = Lattice::build(g);
  EXPECT_EQ((*lat)[0].order(), 1u);
  EXPECT_EQ((*lat)[lat->whole_index()].order(), 24u);
  for (std::size_t i = 1; i < lat->size(); ++i) EXPECT_FALSE((*lat)[i] < (*lat)[i - 1]);
  const auto whole = members(Subgroup::whole(g));
  for (std::size_t i = 0; i < lat->size(); ++i) {
    const auto m = members((*lat)[i]);
    EXPECT_EQ(members(Subgroup(g, lat->normalizer(i))), oracle::normalizer(*g, whole, m));
    EXPECT_EQ(members(Subgroup(g, lat->centralizer(i))), oracle::centralizer(*g, whole, m));
    for (auto j : lat->maximal_subgroups(i)) EXPECT_TRUE((*lat)[i].contains((*lat)[j]));
  }
}

TEST(StandardSubgroups, Examples) {
  auto d8 = catalog_group("D8");
  auto z = standard_subgroup(d8, SubgroupKind::kCenter);
  EXPECT_EQ(z, gen(d8, {cycles(4, {{0, 2}, {1, 3}})}));
  EXPECT_TRUE(standard_subgroup(d8, SubgroupKind::kThompsonJ).is_whole());

  auto s4 = catalog_group("S4");
  auto v4 = standard_subgroup(s4, SubgroupKind::kCoreP, with_p(2));
  EXPECT_EQ(v4, gen(s4, {cycles(4, {{0, 1}, {2, 3}}), cycles(4, {{0, 2}, {1, 3}})}));

  auto c4 = catalog_group("C4");
  EXPECT_EQ(standard_subgroup(c4, SubgroupKind::kOmega1, with_p(2)).order(), 2u);
  EXPECT_EQ(standard_subgroup(s4, SubgroupKind::kSylow, with_p(3)).order(), 3u);
  EXPECT_FUSKIT_ERROR(standard_subgroup(s4, SubgroupKind::kNormalizer, SubgroupArgs{Subgroup::whole(d8), std::nullopt, 0}),
                      ErrorCode::kNotASubgroup);
}

TEST(StandardSubgroups, SetProductNeedsPermutability) {
  auto s3 = catalog_group("S3");
  auto a = gen(s3, {cycles(3, {{0, 1}})});
  auto b = gen(s3, {cycles(3, {{1, 2}})});
  EXPECT_FUSKIT_ERROR(set_product(a, b), ErrorCode::kProductNotASubgroup);
  EXPECT_TRUE(join(a, b).is_whole());
  auto c3 = gen(s3, {cycles(3, {{0, 1, 2}})});
  EXPECT_TRUE(set_product(a, c3).is_whole());
}

TEST(StandardSubgroups, CoresMatchOracle) {
  for (const char* name : {"S3", "S4", "A4", "SL2_3", "D8xC2", "S4xC3", "A6", "Qd3"}) {
    auto g = catalog_group(name);
    const auto whole = Subgroup::whole(g);
    for (auto p : prime_divisors(g->order())) {
      const auto syl = oracle::greedy_sylow(*g, p);
      EXPECT_EQ(sylow(whole, p).order(), oracle::count(syl)) << name << " " << p;
      EXPECT_EQ(members(core_p(whole, p)), oracle::core(*g, syl)) << name << " " << p;
      EXPECT_EQ(members(core_pprime(whole, p)), oracle::o_pprime(*g, p)) << name << " " << p;
      EXPECT_EQ(is_p_soluble_group(whole, p), oracle::group_is_p_soluble(*g, p)) << name << " " << p;
    }
  }
}

TEST(UpperCentralSeries, Examples) {
  auto d8 = catalog_group("D8");
  auto series = upper_central_series(Subgroup::whole(d8));
  ASSERT_EQ(series.size(), 3u);
  EXPECT_EQ(series[0].order(), 1u);
  EXPECT_EQ(series[1].order(), 2u);
  EXPECT_TRUE(series[2].is_whole());
  auto v4 = catalog_group("C4xC2");
  EXPECT_EQ(upper_central_series(Subgroup::whole(v4)).size(), 2u);
}

TEST(QuotientGroup, Examples) {
  auto d8 = catalog_group("D8");
  auto q = quotient_group(d8, center(Subgroup::whole(d8)));
  EXPECT_EQ(q.group->order(), 4u);
  for (ElementId x = 0; x < 4; ++x) EXPECT_LE(q.group->element_order(x), 2u);
  EXPECT_EQ(quotient_group(d8, Subgroup::whole(d8)).group->order(), 1u);

  auto dc = catalog_group("D8xC2");
  auto z = gen(dc, {cycles(6, {{4, 5}})});
  auto qz = quotient_group(dc, z);
  EXPECT_TRUE(isomorphism_search(qz.group, d8).has_value());
  EXPECT_FUSKIT_ERROR(quotient_group(d8, gen(d8, {cycles(4, {{0, 2}})})), ErrorCode::kNotNormal);
}

TEST(QuotientGroup, ProjectionIsHomomorphism) {
  auto g = catalog_group("S4");
  auto q = quotient_group(g, core_p(Subgroup::whole(g), 2));
  for (ElementId a = 0; a < g->order(); ++a)
    for (ElementId b = 0; b < g->order(); ++b)
      ASSERT_EQ(q.projection[g->mul(a, b)], q.group->mul(q.projection[a], q.projection[b]));
  EXPECT_EQ(q.preimage(Subgroup::trivial(q.group)), q.kernel);
}

TEST(Homomorphisms, BuildAndErrors) {
  auto e16 = catalog_group("E16");
  const auto a = cycles(8, {{6, 7}}), b = cycles(8, {{4, 5}}), c = cycles(8, {{2, 3}});
  auto ab = gen(e16, {a * b});
  auto cs = gen(e16, {c});
  auto h = hom_build(ab, cs, {{e16->id_of(a * b), e16->id_of(c)}});
  EXPECT_EQ(h.image(), cs);
  EXPECT_TRUE(hom_build(ab, ab, {{e16->id_of(a * b), e16->id_of(a * b)}}).is_identity());

  auto c4 = catalog_group("C4");
  auto whole = Subgroup::whole(c4);
  auto r = cycles(4, {{0, 1, 2, 3}});
  auto two = gen(c4, {r * r});
  EXPECT_FUSKIT_ERROR(hom_build(whole, two, {{c4->id_of(r), c4->id_of(r * r)}}), ErrorCode::kNotInjective);
  EXPECT_FUSKIT_ERROR(hom_build(whole, two, {{c4->id_of(r), 0}}), ErrorCode::kNotInjective);
  EXPECT_FUSKIT_ERROR(hom_build(two, two, {{c4->id_of(r), c4->id_of(r)}}), ErrorCode::kDoesNotGenerate);
}

TEST(Homomorphisms, Conjugation) {
  auto s4 = catalog_group("S4");
  auto q = gen(s4, {cycles(4, {{0, 2}})});
  auto r = gen(s4, {cycles(4, {{1, 3}})});
  auto g = s4->id_of(cycles(4, {{0, 1, 2, 3}}));
  auto h = conjugation_hom(g, q, r);
  EXPECT_EQ(h(s4->id_of(cycles(4, {{0, 2}}))), s4->id_of(cycles(4, {{1, 3}})));
  EXPECT_EQ(conjugation_hom(0, q, Subgroup::whole(s4)), GroupHom::inclusion(q, Subgroup::whole(s4)));
  EXPECT_FUSKIT_ERROR(conjugation_hom(s4->id_of(cycles(4, {{0, 1}})), q, q), ErrorCode::kConjugateEscapes);
}

TEST(Homomorphisms, IsomorphismSearch) {
  EXPECT_TRUE(isomorphism_search(qd_group(2), catalog_group("S4")).has_value());
  EXPECT_FALSE(isomorphism_search(catalog_group("D8"), catalog_group("Q8")).has_value());
  EXPECT_FALSE(isomorphism_search(catalog_group("SL2_3"), catalog_group("S4")).has_value());
  auto s4 = catalog_group("S4");
  auto self = isomorphism_search(s4, s4);
  ASSERT_TRUE(self.has_value());
  EXPECT_TRUE(self->is_identity());
  EXPECT_EQ(automorphisms(Subgroup::whole(catalog_group("D8"))).size(), 8u);
  EXPECT_EQ(automorphisms(Subgroup::whole(catalog_group("Q8"))).size(), 24u);
}

TEST(Homomorphisms, RandomCompositionProperties) {
  auto g = catalog_group("D8xC2");
  auto auts = automorphisms(Subgroup::whole(g));
  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> pick(0, auts.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const auto& f = auts[pick(rng)];
    const auto& h = auts[pick(rng)];
    auto fh = compose(f, h);
    for (ElementId x = 0; x < g->order(); ++x) EXPECT_EQ(fh(x), h(f(x)));
    EXPECT_TRUE(compose(f, f.inverse()).is_identity());
  }
}
