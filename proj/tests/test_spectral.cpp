#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "circfta/spectral.hpp"
#include "oracles.hpp"

using namespace circfta;

TEST(RootsOfUnity, SmallTables) {
  EXPECT_EQ(roots_of_unity(1).r(0), Scalar(1.0));
  const auto r2 = roots_of_unity(2);
  EXPECT_EQ(r2.r(0), Scalar(1.0));
  EXPECT_EQ(r2.r(1), Scalar(-1.0));

  // e^{i 2 pi k / 4} by std::exp, then r_1^2 = r_2.
  const auto r4 = roots_of_unity(4);
  const Scalar expected[4] = {1.0, {0.0, 1.0}, -1.0, {0.0, -1.0}};
  for (int k = 0; k < 4; ++k) {
    const Scalar direct = std::exp(Scalar(0.0, 2.0 * std::numbers::pi * k / 4.0));
    EXPECT_LE(std::abs(direct - expected[k]), 1e-15);
    EXPECT_EQ(r4.r(k), expected[k]);
  }
  EXPECT_EQ(r4.r(1) * r4.r(1), r4.r(2));
  EXPECT_THROW(roots_of_unity(0), Error);
}

TEST(RootsOfUnity, Invariants) {
  for (std::size_t d = 1; d <= 64; ++d) {
    const auto r = roots_of_unity(d);
    EXPECT_EQ(r.r(0), Scalar(1.0));
    for (std::size_t k = 0; k < d; ++k) {
      const auto kk = static_cast<long long>(k);
      EXPECT_LE(std::abs(std::abs(r.r(kk)) - 1.0), 1e-15);
      EXPECT_LE(std::abs(r.r(kk) * r.r_conj(kk) - 1.0), 1e-15);
      EXPECT_EQ(r.r(kk), r.r(kk + static_cast<long long>(d)));
      EXPECT_EQ(r.r(kk), r.r(kk - 3 * static_cast<long long>(d)));
      // std::exp carries its own argument-reduction error at large angles.
      EXPECT_LE(std::abs(r.r(kk) - std::exp(Scalar(0.0, 2.0 * std::numbers::pi * double(k) / double(d)))),
                4e-15);
    }
  }
}

TEST(RootsOfUnity, CacheIsSharedAcrossThreads) {
  std::vector<std::thread> pool;
  std::vector<const RootsOfUnity*> seen(8);
  for (int t = 0; t < 8; ++t)
    pool.emplace_back([&, t] { seen[t] = cached_roots_of_unity(37).get(); });
  for (auto& th : pool) th.join();
  for (auto* p : seen) EXPECT_EQ(p, seen[0]);
}

TEST(FourierMatrix, DimensionTwo) {
  const auto f = fourier_matrix(2);
  EXPECT_EQ(f.s(0, 0), Scalar(1.0));
  EXPECT_EQ(f.s(0, 1), Scalar(1.0));
  EXPECT_EQ(f.s(1, 0), Scalar(1.0));
  EXPECT_EQ(f.s(1, 1), Scalar(-1.0));
  EXPECT_EQ(f.s_inv(0, 0), Scalar(0.5));
  EXPECT_EQ(f.s_inv(1, 1), Scalar(-0.5));
  const DenseMatrix prod = f.s * f.s_inv;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_EQ(prod(i, j), Scalar(i == j ? 1.0 : 0.0));
}

TEST(FourierMatrix, Structure) {
  const auto f1 = fourier_matrix(1);
  EXPECT_EQ(f1.s(0, 0), Scalar(1.0));
  EXPECT_EQ(f1.s_inv(0, 0), Scalar(1.0));

  const auto f3 = fourier_matrix(3);
  const auto r3 = roots_of_unity(3);
  EXPECT_EQ(f3.s(1, 0), Scalar(1.0));
  EXPECT_EQ(f3.s(1, 1), r3.r(1));
  EXPECT_EQ(f3.s(1, 2), r3.r(2));

  for (std::size_t d = 1; d <= 12; ++d) {
    const auto f = fourier_matrix(d);
    const DenseMatrix prod = f.s * f.s_inv;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        EXPECT_EQ(f.s(i, j), f.s(j, i));
        EXPECT_LE(std::abs(prod(i, j) - Scalar(i == j ? 1.0 : 0.0)), 1e-12);
      }
  }
  EXPECT_THROW(fourier_matrix(0), Error);
}

TEST(Eigenvalues, Examples) {
  EXPECT_EQ(eigenvalues(Circulant{{2.5, -1.0}}).v, (std::vector<Scalar>{{2.5, -1.0}}));

  // Dense conjugation oracle for circ(2, 1).
  const auto conj = oracle::conjugate({2.0, 1.0});
  EXPECT_LE(std::abs(conj[0][0] - 3.0), 1e-15);
  EXPECT_LE(std::abs(conj[1][1] - 1.0), 1e-15);
  EXPECT_EQ(eigenvalues(Circulant{2.0, 1.0}).v, (std::vector<Scalar>{3.0, 1.0}));

  for (std::size_t d = 1; d <= 8; ++d)
    for (const auto& v : eigenvalues(Circulant::identity(d)).v) EXPECT_EQ(v, Scalar(1.0));
}

TEST(CirculantFromEigenvalues, Examples) {
  for (std::size_t d = 1; d <= 8; ++d) {
    const Circulant x = circulant_from_eigenvalues(std::vector<Scalar>(d, 1.0));
    for (std::size_t j = 0; j < d; ++j) EXPECT_LE(std::abs(x[j] - Circulant::identity(d)[j]), 1e-15);
  }
  EXPECT_EQ(circulant_from_eigenvalues(std::vector<Scalar>{3.0, 1.0}), (Circulant{2.0, 1.0}));
  EXPECT_EQ(eigenvalues(Circulant{0.0, 1.0}).v, (std::vector<Scalar>{1.0, -1.0}));
  EXPECT_EQ(circulant_from_eigenvalues(std::vector<Scalar>{1.0, -1.0}), (Circulant{0.0, 1.0}));
  try {
    circulant_from_eigenvalues(std::vector<Scalar>{1.0, std::numeric_limits<double>::infinity()});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonFiniteInput);
  }
}

TEST(ConjugateCheck, Examples) {
  EXPECT_LE(conjugate_check(Circulant::identity(3)), 1e-15);
  EXPECT_LE(conjugate_check(Circulant::generator(2)), 1e-15);
  oracle::Gen gen(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = gen.index(1, 8);
    EXPECT_LE(conjugate_check(Circulant(gen.row(d))), 1e-10);
  }
}

TEST(SpectralProperties, LinearityMultiplicativityRoundTrip) {
  oracle::Gen gen(32);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const Circulant x(gen.row(d)), y(gen.row(d));
    const auto ex = eigenvalues(x), ey = eigenvalues(y);
    const auto sum = eigenvalues(x + y), prod = eigenvalues(x * y);
    const Circulant back = circulant_from_eigenvalues(ex);
    for (std::size_t i = 0; i < d; ++i) {
      EXPECT_LE(std::abs(sum[i] - (ex[i] + ey[i])), 1e-12);
      const Scalar expected = ex[i] * ey[i];
      EXPECT_LE(std::abs(prod[i] - expected), 1e-10 * std::max(1.0, std::abs(expected)));
      EXPECT_LE(std::abs(back[i] - x[i]), 1e-12);
    }
  }
}

TEST(SpectralProperties, GeneratorSpectrumAndDenseAgreement) {
  for (std::size_t d = 1; d <= 16; ++d) {
    const auto r = roots_of_unity(d);
    const auto v = eigenvalues(Circulant::generator(d));
    for (std::size_t i = 0; i < d; ++i) EXPECT_LE(std::abs(v[i] - r.r_conj(static_cast<long long>(i))), 1e-12);
  }
  oracle::Gen gen(33);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = gen.index(1, 8);
    const auto row = gen.row(d);
    const auto conj = oracle::conjugate(row);
    const auto v = eigenvalues(Circulant(row));
    for (std::size_t i = 0; i < d; ++i) EXPECT_LE(std::abs(v[i] - conj[i][i]), 1e-10);
  }
}
