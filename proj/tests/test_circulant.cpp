#include <gtest/gtest.h>

#include <limits>
#include <vector>

#include "circfta/circulant.hpp"
#include "oracles.hpp"

using namespace circfta;

namespace {

std::vector<Scalar> row_of(const Circulant& x) { return {x.first_row().begin(), x.first_row().end()}; }

double rel_diff(const Circulant& a, const Circulant& b) {
  double diff = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    diff = std::max(diff, std::abs(a[k] - b[k]));
    scale = std::max(scale, std::abs(a[k]));
  }
  return diff / scale;
}

}  // namespace

TEST(CircNew, EchoesFirstRow) {
  const Circulant x{1.0, 2.0, 3.0};
  EXPECT_EQ(x.dim(), 3u);
  EXPECT_EQ(row_of(x), (std::vector<Scalar>{1.0, 2.0, 3.0}));
  EXPECT_EQ(Circulant{0.0}.dim(), 1u);
}

TEST(CircNew, RejectsEmptyAndNonFinite) {
  try {
    Circulant x(std::vector<Scalar>{});
    FAIL() << "expected InvalidDimension";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidDimension);
  }
  try {
    Circulant x{1.0, Scalar(0.0, std::numeric_limits<double>::quiet_NaN())};
    FAIL() << "expected NonFiniteInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteInput);
  }
}

TEST(CircIdentity, FirstRowAndDense) {
  EXPECT_EQ(Circulant::identity(3), (Circulant{1.0, 0.0, 0.0}));
  EXPECT_EQ(Circulant::identity(1), Circulant{1.0});
  EXPECT_THROW(Circulant::identity(0), Error);
  const Circulant x{{1.0, 2.0}, {-3.0, 0.5}, 7.0};
  EXPECT_EQ(Circulant::identity(3) * x, x);
  EXPECT_EQ(x * Circulant::identity(3), x);
}

TEST(CircGenerator, MatchesShiftMatrix) {
  const Circulant c3 = Circulant::generator(3);
  EXPECT_EQ(c3, (Circulant{0.0, 1.0, 0.0}));
  const DenseMatrix dense = c3.to_dense();
  const double expected[3][3] = {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(dense(i, j), Scalar(expected[i][j]));
  EXPECT_EQ(Circulant::generator(1), Circulant{1.0});
  EXPECT_THROW(Circulant::generator(0), Error);
}

TEST(CircAdd, EntrywiseAndMismatch) {
  EXPECT_EQ((Circulant{1.0, 2.0} + Circulant{3.0, 4.0}), (Circulant{4.0, 6.0}));
  const Circulant x{{1.0, -1.0}, 2.5};
  EXPECT_EQ(x + Circulant::zero(2), x);
  try {
    (void)(Circulant{1.0, 2.0} + Circulant{1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DimensionMismatch);
  }
}

TEST(CircMul, ShiftByGenerator) {
  // Dense oracle: circ(1,2,3) * C3.
  const auto dense = oracle::mul(oracle::circulant({1.0, 2.0, 3.0}), oracle::circulant({0.0, 1.0, 0.0}));
  EXPECT_EQ(dense[0], (std::vector<oracle::cplx>{3.0, 1.0, 2.0}));
  EXPECT_EQ((Circulant{1.0, 2.0, 3.0} * Circulant::generator(3)), (Circulant{3.0, 1.0, 2.0}));
}

TEST(CircMul, TwoByTwoDifferenceOfSquares) {
  const double a = 1.75, b = -0.5;
  const auto dense = oracle::mul(oracle::circulant({a, b}), oracle::circulant({a, -b}));
  const Circulant prod = Circulant{a, b} * Circulant{a, -b};
  EXPECT_EQ(prod, (Circulant{a * a - b * b, 0.0}));
  EXPECT_EQ(prod[0], dense[0][0]);
  EXPECT_EQ(prod[1], dense[0][1]);
}

TEST(CircMul, OverflowIsAnError) {
  const Circulant big{1e200, 1e200};
  try {
    (void)(big * big);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteInput);
  }
}

TEST(CircPow, GeneratorPowers) {
  EXPECT_EQ(circ_pow(Circulant::generator(3), 2), (Circulant{0.0, 0.0, 1.0}));
  EXPECT_EQ(circ_pow(Circulant::generator(3), 3), Circulant::identity(3));
  EXPECT_EQ(circ_pow(Circulant::generator(3), 4), Circulant::generator(3));
  EXPECT_EQ(circ_pow(Circulant{{0.3, 0.1}, 2.0}, 0), Circulant::identity(2));

  auto dense = oracle::identity(4);
  for (int k = 0; k < 4; ++k) dense = oracle::mul(dense, oracle::circulant({0.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(dense, oracle::identity(4));
  EXPECT_EQ(circ_pow(Circulant::generator(4), 4), Circulant::identity(4));
}

TEST(CircToDense, Layout) {
  const DenseMatrix m = Circulant{1.0, 2.0, 3.0}.to_dense();
  const double expected[3][3] = {{1, 2, 3}, {3, 1, 2}, {2, 3, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(m(i, j), Scalar(expected[i][j]));
  EXPECT_EQ(Circulant{1.0}.to_dense()(0, 0), Scalar(1.0));
}

TEST(EvalMatrixPoly, Examples) {
  const std::vector<Circulant> linear{Circulant{5.0, 0.0}};
  EXPECT_EQ(eval_matrix_poly(linear, Circulant{-5.0, 0.0}), Circulant::zero(2));

  // circ(0,1)^2 = circ(1,0), so X^2 - I vanishes there.
  EXPECT_EQ(oracle::mul(oracle::circulant({0.0, 1.0}), oracle::circulant({0.0, 1.0})), oracle::identity(2));
  const std::vector<Circulant> squares{Circulant{0.0, 0.0}, Circulant{-1.0, 0.0}};
  EXPECT_EQ(eval_matrix_poly(squares, Circulant{0.0, 1.0}), Circulant::zero(2));

  const std::vector<Circulant> zeros{Circulant::zero(3), Circulant::zero(3)};
  EXPECT_EQ(eval_matrix_poly(zeros, Circulant::zero(3)), Circulant::zero(3));
}

TEST(EvalMatrixPoly, ErrorsAndLinearExactness) {
  EXPECT_THROW(eval_matrix_poly(std::vector<Circulant>{Circulant{1.0}}, Circulant{1.0, 2.0}), Error);
  oracle::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const Circulant a(gen.row(d)), x(gen.row(d));
    EXPECT_EQ(eval_matrix_poly(std::vector<Circulant>{a}, x), x + a);
  }
}

TEST(EvalMatrixPoly, MatchesDenseOracle) {
  oracle::Gen gen(12);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = gen.index(1, 6), n = gen.index(1, 4);
    std::vector<Circulant> coeffs;
    std::vector<std::vector<oracle::cplx>> rows;
    for (std::size_t k = 0; k < n; ++k) {
      rows.push_back(gen.row(d));
      coeffs.emplace_back(rows.back());
    }
    const auto x_row = gen.row(d);
    const Circulant value = eval_matrix_poly(coeffs, Circulant(x_row));
    const auto dense = oracle::matrix_poly(rows, x_row);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) EXPECT_LE(std::abs(value.to_dense()(i, j) - dense[i][j]), 1e-12);
  }
}

TEST(FrobeniusNorm, Examples) {
  EXPECT_EQ(Circulant::zero(2).frobenius_norm(), 0.0);
  EXPECT_DOUBLE_EQ(Circulant::identity(2).frobenius_norm(), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(oracle::frobenius(oracle::circulant({3.0, 4.0})), std::sqrt(50.0));
  EXPECT_DOUBLE_EQ((Circulant{3.0, 4.0}).frobenius_norm(), std::sqrt(50.0));
}

TEST(CirculantProperties, RingLaws) {
  oracle::Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const Circulant x(gen.row(d)), y(gen.row(d)), z(gen.row(d));
    EXPECT_LE(rel_diff(x * y, y * x), 1e-12);
    EXPECT_LE(rel_diff((x * y) * z, x * (y * z)), 1e-12);
    EXPECT_LE(rel_diff(x * (y + z), x * y + x * z), 1e-12);
  }
}

TEST(CirculantProperties, DenseHomomorphism) {
  oracle::Gen gen(22);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const auto xr = gen.row(d), yr = gen.row(d);
    const DenseMatrix prod = (Circulant(xr) * Circulant(yr)).to_dense();
    const auto dense = oracle::mul(oracle::circulant(xr), oracle::circulant(yr));
    const double scale = std::max(1.0, oracle::frobenius(dense));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) EXPECT_LE(std::abs(prod(i, j) - dense[i][j]), 1e-12 * scale);
  }
}

TEST(CirculantProperties, CyclicGroupAndSpan) {
  for (std::size_t d = 1; d <= 12; ++d) EXPECT_EQ(circ_pow(Circulant::generator(d), d), Circulant::identity(d));
  oracle::Gen gen(23);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const Circulant x(gen.row(d));
    Circulant sum = Circulant::zero(d);
    for (std::size_t j = 0; j < d; ++j) sum = sum + x[j] * circ_pow(Circulant::generator(d), j);
    EXPECT_EQ(sum, x);
  }
}
