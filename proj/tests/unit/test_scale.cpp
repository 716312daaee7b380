#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "stepahp/matrix.hpp"
#include "stepahp/saaty.hpp"
#include "support.hpp"

namespace stepahp {
namespace {

TEST(Rational, ReducesAndKeepsDenominatorPositive) {
  const Rational r(6, -4);
  EXPECT_EQ(r.num(), -3);
  EXPECT_EQ(r.den(), 2);
  EXPECT_EQ(r.to_string(), "-3/2");
  EXPECT_EQ(Rational(3).to_string(), "3/1");
  EXPECT_THROW(Rational(1, 0), DomainError);
}

TEST(Rational, ParseAcceptsOnlyCanonicalSpelling) {
  EXPECT_EQ(Rational::parse("1/3"), Rational(1, 3));
  EXPECT_EQ(Rational::parse("9/1"), Rational(9));
  EXPECT_EQ(Rational::parse("-2/7"), Rational(-2, 7));
  for (const char* bad : {"", "3", "2/4", "02/1", "1/03", "1/0", "+1/2", " 1/2", "1/2 ", "1.5/1", "1//2", "a/b"}) {
    EXPECT_FALSE(Rational::parse(bad).has_value()) << bad;
  }
}

TEST(Rational, ArithmeticAndOrderingAreExact) {
  EXPECT_EQ(Rational(2, 3) * Rational(9, 4), Rational(3, 2));
  EXPECT_EQ(Rational(5, 7).reciprocal(), Rational(7, 5));
  EXPECT_LT(Rational(1, 9), Rational(1, 8));
  EXPECT_GT(Rational(9), Rational(8));
  EXPECT_EQ(Rational(1, 3) <=> Rational(2, 6), std::strong_ordering::equal);
}

TEST(Saaty, GridHasSeventeenAscendingValues) {
  const auto all = SaatyValue::all();
  ASSERT_EQ(all.size(), 17u);
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1], all[i]);
  EXPECT_EQ(all.front().value(), Rational(1, 9));
  EXPECT_EQ(all[8].value(), Rational(1));
  EXPECT_EQ(all.back().value(), Rational(9));
  for (const auto& v : all) {
    EXPECT_TRUE(is_saaty(v.value()));
    EXPECT_EQ(v.reciprocal().reciprocal(), v);
  }
  EXPECT_FALSE(is_saaty(Rational(10)));
  EXPECT_FALSE(is_saaty(Rational(2, 3)));
  EXPECT_THROW(SaatyValue::grade(0), DomainError);
  EXPECT_THROW(SaatyValue::grade(10), DomainError);
}

TEST(Saaty, SnapPicksNearestInLogSpaceWithTiesTowardOne) {
  EXPECT_EQ(SaatyValue::snap(1.0).value(), Rational(1));
  EXPECT_EQ(SaatyValue::snap(2.9).value(), Rational(3));
  EXPECT_EQ(SaatyValue::snap(0.34).value(), Rational(1, 3));
  EXPECT_EQ(SaatyValue::snap(100.0).value(), Rational(9));
  EXPECT_EQ(SaatyValue::snap(1e-6).value(), Rational(1, 9));
  // sqrt(6) sits exactly between 2 and 3 in log space.
  EXPECT_EQ(SaatyValue::snap(std::sqrt(6.0)).value(), Rational(2));
  EXPECT_EQ(SaatyValue::snap(1.0 / std::sqrt(6.0)).value(), Rational(1, 2));
}

TEST(Saaty, SnapIsSymmetricUnderReciprocal) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> log_x(-3.0, 3.0);
  for (int t = 0; t < 2000; ++t) {
    const double x = std::exp(log_x(rng));
    EXPECT_EQ(SaatyValue::snap(1.0 / x), SaatyValue::snap(x).reciprocal()) << x;
  }
}

TEST(Saaty, ExponentsFactorEveryGrade) {
  EXPECT_EQ(SaatyValue::grade(6).exponents(), (PrimeExponents{1, 1, 0, 0}));
  EXPECT_EQ(SaatyValue::grade(8).reciprocal().exponents(), (PrimeExponents{-3, 0, 0, 0}));
  EXPECT_EQ(SaatyValue::grade(7).exponents(), (PrimeExponents{0, 0, 0, 1}));
  for (const auto& v : SaatyValue::all()) {
    double x = 1.0;
    const auto e = v.exponents();
    for (std::size_t p = 0; p < 4; ++p) x *= std::pow(kScalePrimes[p], e[p]);
    EXPECT_DOUBLE_EQ(x, v.to_double());
  }
}

TEST(Saaty, LabelsCoverOddGradesOnly) {
  EXPECT_FALSE(SaatyValue::grade(1).label().empty());
  EXPECT_FALSE(SaatyValue::grade(9).label().empty());
  EXPECT_TRUE(SaatyValue::grade(4).label().empty());
}

TEST(ComparisonMatrix, FromUpperMirrorsReciprocals) {
  const std::vector<SaatyValue> upper = {SaatyValue::grade(3), SaatyValue::grade(5), SaatyValue::grade(3)};
  const auto m = ComparisonMatrix::from_upper({"a", "b", "c"}, upper);
  EXPECT_EQ(m(0, 1), Rational(3));
  EXPECT_EQ(m(1, 0), Rational(1, 3));
  EXPECT_EQ(m(2, 0), Rational(1, 5));
  EXPECT_TRUE(m.is_valid());
  EXPECT_EQ(m.saaty(2, 1), SaatyValue::grade(3).reciprocal());
}

TEST(ComparisonMatrix, SetKeepsReciprocityUnderRandomEdits) {
  std::mt19937_64 rng(11);
  auto m = ComparisonMatrix::uniform(default_labels(6));
  const auto all = SaatyValue::all();
  std::uniform_int_distribution<std::size_t> cell(0, 5), value(0, all.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const std::size_t i = cell(rng), j = cell(rng);
    if (i == j) {
      EXPECT_THROW(m.set(i, j, SaatyValue::grade(2)), DomainError);
      continue;
    }
    m.set(i, j, all[value(rng)]);
    ASSERT_TRUE(m.is_valid());
  }
}

TEST(ComparisonMatrix, ShapeErrorsAreStructural) {
  EXPECT_THROW(ComparisonMatrix::uniform({"only"}), StructuralError);
  EXPECT_THROW(ComparisonMatrix::uniform(default_labels(11)), StructuralError);
  EXPECT_THROW(ComparisonMatrix({"a", "b"}, {{Rational(1), Rational(1)}}), StructuralError);
  EXPECT_THROW(ComparisonMatrix({"a", "a"}, {{Rational(1), Rational(1)}, {Rational(1), Rational(1)}}),
               StructuralError);
}

TEST(ComparisonMatrix, ValidateNamesEveryBrokenCell) {
  const Rational one(1);
  ComparisonMatrix m({"a", "b", "c"}, {{Rational(2), Rational(3), Rational(10)},
                                       {Rational(1, 2), one, Rational(-1)},
                                       {Rational(1, 10), Rational(1), one}});
  const auto cells = m.validate("m");
  ASSERT_EQ(cells.size(), 5u);
  auto has = [&](std::size_t r, std::size_t c) {
    for (const auto& d : cells) {
      if (d.matrix == "m" && d.row == r && d.col == c) return true;
    }
    return false;
  };
  EXPECT_TRUE(has(0, 0));  // diagonal
  EXPECT_TRUE(has(0, 2));  // off scale
  EXPECT_TRUE(has(2, 0));  // off scale
  EXPECT_TRUE(has(1, 0));  // 1/2 against 3
  EXPECT_TRUE(has(1, 2));  // not positive
  EXPECT_THROW(m.require_valid("m"), ValidationError);
}

TEST(ComparisonMatrix, ReciprocityBreakIsReportedOnceOnTheLowerCell) {
  ComparisonMatrix broken({"a", "b"}, {{Rational(1), Rational(3)}, {Rational(1, 2), Rational(1)}});
  const auto cells = broken.validate("criteria");
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].row, 1u);
  EXPECT_EQ(cells[0].col, 0u);
  EXPECT_NE(cells[0].to_string().find("criteria[1][0]"), std::string::npos);
}

TEST(ComparisonMatrix, PermutationAndTranspose) {
  std::mt19937_64 rng(3);
  const auto m = testing::random_saaty_matrix(4, rng);
  const std::vector<std::size_t> perm = {2, 0, 3, 1};
  const auto p = m.permuted(perm);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(p.labels()[i], m.labels()[perm[i]]);
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(p(i, j), m(perm[i], perm[j]));
  }
  const auto t = m.transposed();
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(t(i, j), m(i, j).reciprocal());
  }
}

TEST(RealMatrix, FromRatiosIsConsistent) {
  const std::vector<double> w = {4.0, 2.0, 1.0};
  const auto m = RealMatrix::from_ratios(w);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(m(i, j) * m(j, k), m(i, k), 1e-12);
    }
  }
  EXPECT_THROW(RealMatrix::from_ratios(std::vector<double>{1.0, 0.0}), DomainError);
}

}  // namespace
}  // namespace stepahp
