#include <gtest/gtest.h>

#include <bit>

#include "oracles.hpp"
#include "ring_atlas/isomorphism.hpp"
#include "ring_atlas/structure.hpp"
#include "ring_atlas/units.hpp"
#include "ring_atlas/wedderburn.hpp"

namespace ring_atlas {
namespace {

FiniteRing gf(std::uint64_t p, unsigned n = 1) { return make_galois_field(p, n); }
FiniteRing t2gf2() { return make_upper_triangular(gf(2), 2); }
FiniteRing m2gf2() { return make_matrix_ring(gf(2), 2); }

std::uint32_t as_mask(const SubStructure& s) {
  std::uint32_t m = 0;
  for (index_type x : s.members) m |= 1u << x;
  return m;
}

std::vector<FiniteRing> small_rings() {
  return {make_zmod(2), make_zmod(4), make_zmod(6), make_zmod(8), make_zmod(9), make_zmod(12),
          gf(2, 2), gf(3), gf(2, 3), direct_sum(gf(2), gf(2)), direct_sum(make_zmod(4), gf(2)),
          t2gf2(), m2gf2(), direct_sum(gf(2), make_zmod(3))};
}

TEST(JacobsonRadical, Examples) {
  EXPECT_EQ(jacobson_radical(make_zmod(4)).members, (std::vector<index_type>{0, 2}));
  EXPECT_EQ(jacobson_radical(t2gf2()).size(), 2u);
  EXPECT_EQ(jacobson_radical(m2gf2()).size(), 1u);
}

TEST(JacobsonRadical, MatchesIntersectionOfMaximalLeftIdeals) {
  for (const auto& r : small_rings()) {
    const auto n = static_cast<unsigned>(r.order());
    auto expected = oracle::radical_by_maximal_left_ideals(
        n, [&](unsigned a, unsigned b) { return r.add(a, b); }, [&](unsigned a, unsigned b) { return r.mul(a, b); });
    EXPECT_EQ(as_mask(jacobson_radical(r)), expected) << r.label();
  }
}

TEST(JacobsonRadical, Properties) {
  for (const auto& r : small_rings()) {
    auto j = jacobson_radical(r);
    EXPECT_EQ(j.kind, SubKind::two_sided_ideal);
    EXPECT_TRUE(is_nilpotent_ideal(r, j)) << r.label();
    auto g = units(r);
    for (index_type x : j.members) EXPECT_TRUE(g.contains(r.add(r.one(), x)));
    if (j.size() < r.order()) {
      auto q = quotient(r, j);
      EXPECT_EQ(jacobson_radical(q.quotient).size(), 1u) << r.label();
    }
  }
}

TEST(JacobsonRadical, QuotientCorrespondence) {
  // For I inside J(R): J(R/I) is the image of J(R).
  for (const auto& r : small_rings()) {
    auto j = jacobson_radical(r);
    for (const auto& ideal : ideals_within(r, j)) {
      auto q = quotient(r, ideal);
      std::vector<index_type> image;
      for (index_type x : j.members) image.push_back(q.projection[x]);
      std::ranges::sort(image);
      image.erase(std::unique(image.begin(), image.end()), image.end());
      EXPECT_EQ(jacobson_radical(q.quotient).members, image) << r.label();
    }
  }
}

TEST(Annihilator, Examples) {
  auto z4 = make_zmod(4);
  auto a = annihilator(z4, 2, Side::left);
  EXPECT_EQ(a.members, (std::vector<index_type>{0, 2}));
  EXPECT_EQ(a.kind, SubKind::two_sided_ideal);
  EXPECT_EQ(annihilator(make_zmod(8), 0, Side::left).size(), 8u);

  auto t2 = t2gf2();
  auto j = jacobson_radical(t2);
  index_type a_rad = j.members[1];
  auto ann = annihilator(t2, a_rad, Side::left);
  EXPECT_EQ(ann.size(), 4u);
  EXPECT_EQ(t2.order() / ann.size(), 2u);
}

TEST(Annihilator, SidednessIsReportedHonestly) {
  auto t2 = t2gf2();
  for (index_type a = 0; a < t2.order(); ++a) {
    auto left = annihilator(t2, a, Side::left);
    auto right = annihilator(t2, a, Side::right);
    auto mask_l = left.mask();
    for (index_type x : left.members)
      for (index_type t = 0; t < t2.order(); ++t) EXPECT_TRUE(mask_l[t2.mul(t, x)]);
    auto mask_r = right.mask();
    for (index_type x : right.members)
      for (index_type t = 0; t < t2.order(); ++t) EXPECT_TRUE(mask_r[t2.mul(x, t)]);
    auto both = annihilator(t2, a, Side::two_sided);
    EXPECT_TRUE(both.is_subset_of(left));
    EXPECT_TRUE(both.is_subset_of(right));
  }
}

TEST(Annihilator, CommutativeIndexLaw) {
  for (std::uint64_t m : {4u, 6u, 8u, 9u, 12u, 30u}) {
    auto r = make_zmod(m);
    for (index_type a = 0; a < r.order(); ++a) {
      auto ann = annihilator(r, a, Side::left);
      auto ideal = ideal_generated(r, {a}, Side::two_sided);
      EXPECT_EQ(ann.size() * ideal.size(), r.order());
    }
  }
}

TEST(IdealGenerated, Examples) {
  auto z6 = make_zmod(6);
  // 2 in Z_6 is index (0 mod 2, 2 mod 3) = 0 + 2*2 = 4.
  index_type two = z6.times(2, z6.one());
  auto ideal = ideal_generated(z6, {two}, Side::two_sided);
  EXPECT_EQ(ideal.size(), 3u);
  EXPECT_TRUE(ideal.contains(z6.times(4, z6.one())));
  EXPECT_EQ(ideal_generated(z6, std::span<const index_type>{}, Side::left).members, (std::vector<index_type>{0}));
  auto m2 = m2gf2();
  for (index_type x = 1; x < m2.order(); ++x) EXPECT_EQ(ideal_generated(m2, {x}, Side::two_sided).size(), 16u);
}

TEST(Ideals, AgreeWithSubsetOracle) {
  for (const auto& r : small_rings()) {
    const auto n = static_cast<unsigned>(r.order());
    auto add = [&](unsigned a, unsigned b) { return r.add(a, b); };
    auto mul = [&](unsigned a, unsigned b) { return r.mul(a, b); };
    auto expected = oracle::ideals_by_subsets(n, add, mul, true, true);
    std::vector<std::uint32_t> got;
    SubStructure whole{r, {}, SubKind::two_sided_ideal, {}};
    for (index_type x = 0; x < n; ++x) whole.members.push_back(x);
    for (const auto& ideal : ideals_within(r, whole)) got.push_back(as_mask(ideal));
    std::ranges::sort(got);
    std::ranges::sort(expected);
    EXPECT_EQ(got, expected) << r.label();

    const std::uint32_t full = (1u << n) - 1;
    std::vector<std::uint32_t> maximal, minimal;
    for (auto a : expected) {
      if (a != full && std::ranges::none_of(expected, [&](auto b) { return b != full && b != a && (a & b) == a; }))
        maximal.push_back(a);
      if (a != 1u && std::ranges::none_of(expected, [&](auto b) { return b != 1u && b != a && (a & b) == b; }))
        minimal.push_back(a);
    }
    std::vector<std::uint32_t> got_max, got_min;
    for (const auto& m : maximal_ideals(r)) got_max.push_back(as_mask(m));
    for (const auto& m : minimal_ideals(r)) got_min.push_back(as_mask(m));
    std::ranges::sort(got_max);
    std::ranges::sort(got_min);
    std::ranges::sort(maximal);
    std::ranges::sort(minimal);
    EXPECT_EQ(got_max, maximal) << r.label();
    EXPECT_EQ(got_min, minimal) << r.label();
  }
}

TEST(MinimalIdeals, Examples) {
  auto z4 = minimal_ideals(make_zmod(4));
  ASSERT_EQ(z4.size(), 1u);
  EXPECT_EQ(z4[0].members, (std::vector<index_type>{0, 2}));
  EXPECT_EQ(minimal_ideals(direct_sum(gf(2), gf(2))).size(), 2u);
  auto z8 = minimal_ideals(make_zmod(8));
  ASSERT_EQ(z8.size(), 1u);
  EXPECT_EQ(z8[0].members, (std::vector<index_type>{0, 4}));
}

TEST(MaximalIdeals, Examples) {
  auto z12 = maximal_ideals(make_zmod(12));
  ASSERT_EQ(z12.size(), 2u);
  std::vector<std::size_t> indices{12 / z12[0].size(), 12 / z12[1].size()};
  std::ranges::sort(indices);
  EXPECT_EQ(indices, (std::vector<std::size_t>{2, 3}));
  auto gf8 = maximal_ideals(gf(2, 3));
  ASSERT_EQ(gf8.size(), 1u);
  EXPECT_EQ(gf8[0].size(), 1u);
  auto t2 = maximal_ideals(t2gf2());
  ASSERT_EQ(t2.size(), 2u);
  EXPECT_EQ(t2[0].size(), 4u);
  EXPECT_EQ(t2[1].size(), 4u);
}

TEST(MaximalIdeals, MaximalityCheckByAdjoining) {
  for (const auto& r : small_rings())
    for (const auto& m : maximal_ideals(r)) {
      EXPECT_LT(m.size(), r.order());
      for (index_type x = 0; x < r.order(); ++x) {
        if (m.contains(x)) continue;
        auto seed = m.members;
        seed.push_back(x);
        EXPECT_EQ(ideal_generated(r, seed, Side::two_sided).size(), r.order());
      }
    }
}

TEST(Quotient, Examples) {
  auto z4 = make_zmod(4);
  auto q = quotient(z4, jacobson_radical(z4));
  EXPECT_EQ(q.quotient.order(), 2u);
  EXPECT_TRUE(is_isomorphic(q.quotient, gf(2)));
  EXPECT_EQ(q.representatives, (std::vector<index_type>{0, 1}));

  auto t2 = t2gf2();
  auto zero = ideal_generated(t2, std::span<const index_type>{}, Side::two_sided);
  EXPECT_TRUE(is_isomorphic(quotient(t2, zero).quotient, t2));

  auto qt = quotient(t2, jacobson_radical(t2));
  EXPECT_EQ(qt.quotient.order(), 4u);
  EXPECT_TRUE(is_commutative(qt.quotient));
  EXPECT_TRUE(is_isomorphic(qt.quotient, direct_sum(gf(2), gf(2))));
}

TEST(Quotient, ProjectionIsSurjectiveHomomorphism) {
  for (const auto& r : small_rings())
    for (const auto& ideal : minimal_ideals(r)) {
      if (ideal.size() == r.order()) continue;
      auto q = quotient(r, ideal);
      EXPECT_EQ(q.quotient.order() * ideal.size(), r.order());
      EXPECT_TRUE(validate(q.quotient).ok());
      EXPECT_EQ(q.projection[r.one()], q.quotient.one());
      for (index_type a = 0; a < r.order(); ++a)
        for (index_type b = 0; b < r.order(); ++b) {
          EXPECT_EQ(q.projection[r.add(a, b)], q.quotient.add(q.projection[a], q.projection[b]));
          EXPECT_EQ(q.projection[r.mul(a, b)], q.quotient.mul(q.projection[a], q.projection[b]));
        }
    }
}

TEST(Quotient, RejectsOneSidedIdeal) {
  auto t2 = t2gf2();
  for (index_type a = 0; a < t2.order(); ++a) {
    auto left = annihilator(t2, a, Side::left);
    if (left.kind == SubKind::left_ideal) {
      EXPECT_THROW(quotient(t2, left), Error);
      return;
    }
  }
  FAIL() << "T_2(GF(2)) should have a one-sided annihilator";
}

TEST(Center, Examples) {
  EXPECT_EQ(center(make_zmod(12)).size(), 12u);
  auto m2 = m2gf2();
  EXPECT_EQ(center(m2).members, (std::vector<index_type>{0, m2.one()}));
  EXPECT_EQ(center(t2gf2()).size(), 2u);
}

TEST(CentralIdempotentSplit, Examples) {
  auto z12 = central_idempotent_split(make_zmod(12));
  ASSERT_EQ(z12.size(), 2u);
  std::vector<std::size_t> orders{z12[0].ring.order(), z12[1].ring.order()};
  std::ranges::sort(orders);
  EXPECT_EQ(orders, (std::vector<std::size_t>{3, 4}));
  EXPECT_EQ(central_idempotent_split(m2gf2()).size(), 1u);
  const FiniteRing parts[] = {gf(2), gf(2), gf(2, 2)};
  EXPECT_EQ(central_idempotent_split(direct_sum(parts)).size(), 3u);
}

TEST(CentralIdempotentSplit, BlocksReassemble) {
  for (const auto& r : small_rings()) {
    auto blocks = central_idempotent_split(r);
    index_type sum = r.zero();
    std::size_t product = 1;
    std::vector<FiniteRing> rings;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      sum = r.add(sum, blocks[i].idempotent);
      product *= blocks[i].ring.order();
      rings.push_back(blocks[i].ring);
      EXPECT_EQ(blocks[i].embedding[blocks[i].ring.one()], blocks[i].idempotent);
      for (std::size_t j = 0; j < blocks.size(); ++j)
        if (i != j) EXPECT_EQ(r.mul(blocks[i].idempotent, blocks[j].idempotent), r.zero());
    }
    EXPECT_EQ(sum, r.one()) << r.label();
    EXPECT_EQ(product, r.order()) << r.label();
    EXPECT_TRUE(is_isomorphic(direct_sum(rings), r)) << r.label();
  }
}

TEST(WedderburnBlocks, Examples) {
  EXPECT_EQ(wedderburn_blocks(direct_sum(gf(2), gf(2, 2))), (std::vector<MatrixBlock>{{1, 2}, {1, 4}}));
  EXPECT_EQ(wedderburn_blocks(m2gf2()), (std::vector<MatrixBlock>{{2, 2}}));
  auto t2 = t2gf2();
  auto q = quotient(t2, jacobson_radical(t2));
  EXPECT_EQ(wedderburn_blocks(q.quotient), (std::vector<MatrixBlock>{{1, 2}, {1, 2}}));
  try {
    wedderburn_blocks(t2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::precondition_violation);
  }
}

TEST(PrimeSubringClosure, Examples) {
  auto z9 = make_zmod(9);
  EXPECT_EQ(prime_subring_closure(z9, {}).size(), 9u);

  auto v = direct_sum(gf(2), gf(2));
  auto g = units(v);
  auto closure = prime_subring_closure(v, g.elements());
  EXPECT_EQ(closure.members, (std::vector<index_type>{0, v.one()}));

  auto gf9 = gf(3, 2);
  auto g9 = units(gf9);
  EXPECT_EQ(prime_subring_closure(gf9, g9.elements()).size(), 9u);
}

TEST(SubstructureFromMembers, DetectsKind) {
  auto z4 = make_zmod(4);
  EXPECT_EQ(substructure_from_members(z4, {0, 2}).kind, SubKind::two_sided_ideal);
  EXPECT_THROW(substructure_from_members(z4, {0, 1}), Error);
}

}  // namespace
}  // namespace ring_atlas
