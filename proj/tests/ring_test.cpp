#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"
#include "ring_atlas/ring.hpp"
#include "ring_atlas/units.hpp"

namespace ring_atlas {
namespace {

std::size_t unit_count(const FiniteRing& r) { return units(r).size(); }

TEST(MakeZmod, UnitsMatchEulerPhi) {
  for (std::uint64_t m = 2; m <= 40; ++m) {
    auto r = make_zmod(m);
    EXPECT_EQ(r.order(), m);
    EXPECT_EQ(unit_count(r), oracle::euler_phi(m)) << "m=" << m;
    EXPECT_EQ(characteristic(r), m);
  }
}

TEST(MakeZmod, SmallCases) {
  auto z4 = make_zmod(4);
  auto g = units(z4);
  EXPECT_EQ(std::vector<index_type>(g.elements().begin(), g.elements().end()), (std::vector<index_type>{1, 3}));
  EXPECT_EQ(unit_count(make_zmod(2)), 1u);
  EXPECT_EQ(unit_count(make_zmod(9)), 6u);
}

TEST(MakeZmod, RejectsTooSmall) {
  EXPECT_THROW(make_zmod(1), Error);
  try {
    make_zmod(0);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_parameter);
  }
}

TEST(MakeZmod, MixedRadixComponents) {
  auto z12 = make_zmod(12);
  EXPECT_EQ(std::vector<index_type>(z12.components().begin(), z12.components().end()),
            (std::vector<index_type>{4, 3}));
  EXPECT_EQ(z12.decode(z12.one()), (ElementVector{1, 1}));
}

TEST(GaloisField, LeastIrreducible) {
  // x^2 + x + 1 over Z_2, x^2 + 1 over Z_3. Of the two cubics over Z_2,
  // x^3 + x^2 + 1 has tuple (1, 0, 1) which precedes (1, 1, 0).
  EXPECT_EQ(least_irreducible(2, 2), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(least_irreducible(3, 2), (std::vector<std::uint64_t>{1, 0, 1}));
  EXPECT_EQ(least_irreducible(2, 3), (std::vector<std::uint64_t>{1, 0, 1, 1}));
}

TEST(GaloisField, UnitGroupIsCyclic) {
  for (auto [p, n] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {7, 1}}) {
    auto f = make_galois_field(p, n);
    auto g = units(f);
    EXPECT_EQ(g.size(), ipow(p, n) - 1);
    EXPECT_TRUE(is_field(f));
    bool has_generator = std::ranges::any_of(g.elements(), [&](index_type x) { return g.element_order(x) == g.size(); });
    EXPECT_TRUE(has_generator) << f.label();
    EXPECT_TRUE(validate(f).ok()) << f.label();
  }
}

TEST(GaloisField, Gf9OrderProfileMatchesOracle) {
  EXPECT_EQ(units(make_galois_field(3, 2)).order_profile(), oracle::gf9_unit_order_profile());
  auto gf4 = units(make_galois_field(2, 2));
  EXPECT_EQ(gf4.size(), 3u);
  EXPECT_EQ(gf4.order_profile().at(3), 2u);
}

TEST(GaloisField, RejectsNonPrime) {
  EXPECT_THROW(make_galois_field(4, 1), Error);
  EXPECT_THROW(make_galois_field(1, 2), Error);
}

TEST(MatrixRing, UnitCountsMatchDeterminantOracle) {
  EXPECT_EQ(make_matrix_ring(make_galois_field(2, 1), 2).order(), 16u);
  EXPECT_EQ(unit_count(make_matrix_ring(make_galois_field(2, 1), 2)), oracle::count_invertible_matrices(2, 2));
  EXPECT_EQ(unit_count(make_matrix_ring(make_galois_field(3, 1), 2)), oracle::count_invertible_matrices(2, 3));
  EXPECT_EQ(oracle::count_invertible_matrices(2, 3), (9u - 1) * (9u - 3));
  EXPECT_EQ(unit_count(make_matrix_ring(make_galois_field(2, 1), 2)), 6u);
  EXPECT_EQ(unit_count(make_matrix_ring(make_galois_field(3, 1), 2)), 48u);
}

TEST(MatrixRing, SizeOneIsTheField) {
  auto m1 = make_matrix_ring(make_galois_field(3, 1), 1);
  auto f = make_galois_field(3, 1);
  EXPECT_TRUE(m1.same_tables(f));
}

TEST(MatrixRing, RejectsNonField) {
  EXPECT_THROW(make_matrix_ring(make_zmod(4), 2), Error);
  EXPECT_THROW(make_upper_triangular(make_zmod(6), 2), Error);
}

TEST(MatrixRing, RespectsCap) {
  try {
    make_matrix_ring(make_galois_field(2, 1), 4);  // 2^16 elements
    FAIL() << "expected resource limit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(UpperTriangular, T2OverGf2) {
  auto t2 = make_upper_triangular(make_galois_field(2, 1), 2);
  EXPECT_EQ(t2.order(), 8u);
  EXPECT_FALSE(is_commutative(t2));
  EXPECT_EQ(unit_count(t2), 2u);
  auto report = validate(t2);
  EXPECT_TRUE(report.ok());
  EXPECT_FALSE(report.commutative);
}

TEST(UpperTriangular, T2OverGf3AndT1) {
  auto t2 = make_upper_triangular(make_galois_field(3, 1), 2);
  EXPECT_EQ(t2.order(), 27u);
  EXPECT_EQ(unit_count(t2), oracle::count_triangular_units(3));
  EXPECT_TRUE(make_upper_triangular(make_galois_field(5, 1), 1).same_tables(make_galois_field(5, 1)));
}

TEST(DirectSum, UnitCountsMultiply) {
  EXPECT_EQ(unit_count(direct_sum(make_zmod(4), make_galois_field(3, 1))), 4u);
  auto s = direct_sum(make_galois_field(2, 1), make_galois_field(2, 1));
  EXPECT_EQ(s.order(), 4u);
  EXPECT_EQ(unit_count(s), 1u);
  auto big = direct_sum(make_matrix_ring(make_galois_field(2, 1), 2), make_galois_field(2, 2));
  EXPECT_EQ(big.order(), 64u);
  EXPECT_EQ(unit_count(big), 18u);
}

TEST(DirectSum, PropertiesOverSmallRings) {
  std::vector<FiniteRing> rings{make_zmod(2), make_zmod(4), make_zmod(6), make_galois_field(2, 2),
                                make_galois_field(3, 1), make_upper_triangular(make_galois_field(2, 1), 2)};
  for (const auto& a : rings)
    for (const auto& b : rings) {
      auto s = direct_sum(a, b);
      EXPECT_EQ(unit_count(s), unit_count(a) * unit_count(b)) << s.label();
      EXPECT_EQ(characteristic(s), std::lcm(characteristic(a), characteristic(b))) << s.label();
      EXPECT_TRUE(validate(s).ok()) << s.label();
    }
}

TEST(DirectSum, OverflowIsResourceLimit) {
  try {
    direct_sum(make_zmod(64), make_zmod(65));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(Characteristic, Examples) {
  EXPECT_EQ(characteristic(make_zmod(4)), 4u);
  EXPECT_EQ(characteristic(make_galois_field(2, 2)), 2u);
  EXPECT_EQ(characteristic(direct_sum(make_zmod(4), make_galois_field(3, 1))), 12u);
}

TEST(Validate, PassesOnConstructions) {
  EXPECT_TRUE(validate(make_zmod(8)).ok());
  EXPECT_TRUE(validate(make_matrix_ring(make_galois_field(2, 1), 2)).ok());
  EXPECT_TRUE(validate(make_upper_triangular(make_galois_field(3, 1), 2)).ok());
}

TEST(Validate, DetectsCorruptedCell) {
  auto z8 = make_zmod(8);
  std::vector<index_type> mul(z8.mul_table().begin(), z8.mul_table().end());
  mul[3 * 8 + 5] = 2;  // 3 * 5 should be 7
  auto bad = FiniteRing::from_structure({8}, mul, z8.one(), "bad");
  auto report = validate(bad);
  ASSERT_FALSE(report.ok());
  EXPECT_TRUE(report.violated("mul-associative") || report.violated("left-distributive"));
  for (const auto& v : report.violations) {
    if (v.law != "left-distributive") continue;
    EXPECT_NE(bad.mul(v.a, bad.add(v.b, v.c)), bad.add(bad.mul(v.a, v.b), bad.mul(v.a, v.c)));
  }
}

TEST(Validate, SamplesAboveLimit) {
  auto report = validate(make_zmod(30), 16);
  EXPECT_FALSE(report.exhaustive);
  EXPECT_TRUE(report.ok());
}

TEST(NormalizeTables, ReindexesArbitraryLabels) {
  // Z_6 with elements labelled by k -> (5k + 1) mod 6; zero is label 1.
  const std::size_t n = 6;
  std::vector<index_type> label(n), add(n * n), mul(n * n);
  for (index_type k = 0; k < n; ++k) label[k] = (5 * k + 1) % n;
  for (index_type a = 0; a < n; ++a)
    for (index_type b = 0; b < n; ++b) {
      add[label[a] * n + label[b]] = label[(a + b) % n];
      mul[label[a] * n + label[b]] = label[(a * b) % n];
    }
  auto normalized = normalize_tables(n, add, mul, label[1], "relabelled");
  EXPECT_TRUE(validate(normalized.ring).ok());
  EXPECT_EQ(normalized.new_of_old[label[0]], 0u);
  EXPECT_EQ(normalized.ring.one(), normalized.new_of_old[label[1]]);
  EXPECT_EQ(characteristic(normalized.ring), 6u);
}

TEST(NormalizeTables, RejectsNonGroupAddition) {
  std::vector<index_type> add{0, 1, 1, 1}, mul{0, 0, 0, 1};
  EXPECT_THROW(normalize_tables(2, add, mul, 1, "bad"), Error);
}

TEST(OrderCap, Configurable) {
  const auto saved = order_cap();
  set_order_cap(10);
  EXPECT_THROW(make_zmod(11), Error);
  EXPECT_NO_THROW(make_zmod(10));
  set_order_cap(saved);
  EXPECT_THROW(set_order_cap(1), Error);
}

}  // namespace
}  // namespace ring_atlas
