#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dhloc/series.hpp"
#include "oracles.hpp"

using namespace dhloc;
using dhloc::oracle::bernoulli_numbers;
using dhloc::oracle::factorial;

namespace {

constexpr double pi = std::numbers::pi;
const cplx I(0.0, 1.0);

TruncSeries random_series(std::mt19937_64& rng, int low, int high) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> c;
  for (int e = low; e <= high; ++e) {
    cplx x;
    do x = cplx(u(rng), u(rng));
    while (std::abs(x) > 1.0);
    c.push_back(x);
  }
  return TruncSeries(low, std::move(c));
}

double max_diff(const TruncSeries& a, const TruncSeries& b) {
  const int lo = std::min(a.low_exp(), b.low_exp());
  const int hi = std::min(a.high_exp(), b.high_exp());
  double m = 0.0;
  for (int e = lo; e <= hi; ++e) m = std::max(m, std::abs(a.coefficient(e) - b.coefficient(e)));
  return m;
}

TruncSeries one(int high) { return TruncSeries::monomial(0, 1.0, high); }

}  // namespace

TEST(Series, ExpLinearZeroIsOne) {
  const auto s = exp_linear(0.0, Window{0, 8});
  EXPECT_EQ(s.coefficient(0), cplx(1.0));
  for (int e = 1; e <= 8; ++e) EXPECT_EQ(s.coefficient(e), cplx{});
}

TEST(Series, ExpLinearFirstCoefficient) {
  const auto s = exp_linear(I * pi, Window{-2, 6});
  EXPECT_EQ(s.coefficient(-1), cplx{});
  EXPECT_NEAR(std::abs(s.coefficient(1) - I * pi), 0.0, 1e-15);
}

TEST(Series, ExpTimesInverseExpIsOne) {
  const cplx a(0.7, -1.3);
  const auto p = mul(exp_linear(a, Window{0, 20}), exp_linear(-a, Window{0, 20}));
  EXPECT_LE(max_diff(p, one(20)), 1e-14);
}

TEST(Series, SinLinear) {
  const auto z = sin_linear(0.0, Window{0, 9});
  for (int e = 0; e <= 9; ++e) EXPECT_EQ(z.coefficient(e), cplx{});

  const auto s = sin_linear(pi, Window{0, 9});
  EXPECT_NEAR(s.coefficient(1).real(), pi, 1e-15);
  EXPECT_NEAR(s.coefficient(3).real(), -pi * pi * pi / 6.0, 1e-14);
  for (int e = 0; e <= 9; e += 2) EXPECT_EQ(s.coefficient(e), cplx{});
}

TEST(Series, WindowPreconditions) {
  EXPECT_THROW(exp_linear(1.0, Window{1, 4}), InputError);
  EXPECT_THROW(sin_linear(1.0, Window{2, 4}), InputError);
  EXPECT_THROW(bose_kernel(-2), InputError);
}

TEST(Series, BoseKernelLeadingTerms) {
  const auto b = bose_kernel(10);
  EXPECT_EQ(b.low_exp(), -1);
  EXPECT_GE(b.high_exp(), 10);
  EXPECT_NEAR(b.coefficient(-1).real(), 0.0, 1e-16);
  EXPECT_NEAR(b.coefficient(-1).imag(), -0.15915494309189535, 1e-15);  // 1/(2 pi i)
  EXPECT_NEAR(std::abs(b.coefficient(0) - cplx(-0.5)), 0.0, 1e-15);
}

TEST(Series, BoseKernelDefiningIdentity) {
  const int high = 16;
  const auto em1 = sub(exp_linear(2.0 * pi * I, Window{0, high + 2}), one(high + 2));
  const auto p = mul(em1, bose_kernel(high + 2));
  EXPECT_LE(max_diff(p, one(p.high_exp())), 1e-13);
}

TEST(Series, BoseKernelMatchesBernoulliRecurrence) {
  const auto B = bernoulli_numbers(9);
  const auto b = bose_kernel(8);
  for (int n = 0; n <= 9; ++n) {
    const cplx want = B[n] * std::pow(2.0 * pi * I, n - 1) / factorial(n);
    EXPECT_LE(std::abs(b.coefficient(n - 1) - want), 1e-12) << "n=" << n;
  }
}

TEST(Series, MulIdentityAndMonomials) {
  std::mt19937_64 rng(7);
  const auto s = random_series(rng, -3, 8);
  EXPECT_LE(max_diff(mul(one(20), s), s), 0.0);

  const auto p = mul(TruncSeries::monomial(-2, 1.0, 10), TruncSeries::monomial(3, 1.0, 10));
  EXPECT_EQ(p.coefficient(1), cplx(1.0));
  for (int e = p.low_exp(); e <= p.high_exp(); ++e) {
    if (e != 1) {
      EXPECT_EQ(p.coefficient(e), cplx{});
    }
  }
}

TEST(Series, CanonicalZeroIsAbsorbing) {
  std::mt19937_64 rng(8);
  const auto s = random_series(rng, -2, 5);
  const TruncSeries zero;
  EXPECT_TRUE(mul(zero, s).is_canonical_zero());
  EXPECT_TRUE(mul(s, zero).is_canonical_zero());
  EXPECT_LE(max_diff(add(zero, s), s), 0.0);
  EXPECT_EQ(residue(zero), cplx{});
  EXPECT_THROW(reciprocal(zero), NumericError);
}

TEST(Series, TruncationIsExplicit) {
  const auto s = exp_linear(1.0, Window{0, 4});
  EXPECT_THROW(s.coefficient(5), std::out_of_range);
  // (z^-2 + ...)(1 + z + ... up to z^4): exact only through z^2.
  const auto p = mul(TruncSeries::monomial(-2, 1.0, 4), s);
  EXPECT_EQ(p.high_exp(), 2);
}

TEST(Series, RingLawsOnRandomSeries) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = random_series(rng, -3, 10);
    const auto b = random_series(rng, -2, 9);
    const auto c = random_series(rng, 0, 12);
    EXPECT_LE(max_diff(mul(a, b), mul(b, a)), 1e-15);
    EXPECT_LE(max_diff(add(a, b), add(b, a)), 1e-15);
    EXPECT_LE(max_diff(mul(mul(a, b), c), mul(a, mul(b, c))), 1e-13);
    EXPECT_LE(max_diff(add(add(a, b), c), add(a, add(b, c))), 1e-15);
    EXPECT_LE(max_diff(mul(a, add(b, c)), add(mul(a, b), mul(a, c))), 1e-13);
  }
}

TEST(Series, ReciprocalBasics) {
  const auto r = reciprocal(TruncSeries::monomial(0, 2.0, 5));
  EXPECT_EQ(r.coefficient(0), cplx(0.5));

  const auto g = reciprocal(TruncSeries(0, {1.0, 1.0, 0.0, 0.0, 0.0, 0.0}));
  for (int e = 0; e <= 5; ++e) EXPECT_EQ(g.coefficient(e), cplx(e % 2 == 0 ? 1.0 : -1.0));

  // leading zeros are skipped: valuation 2 gives low_exp -2
  const auto v = reciprocal(TruncSeries(0, {0.0, 0.0, 3.0, 1.0, 0.0, 0.0}));
  EXPECT_EQ(v.low_exp(), -2);
}

TEST(Series, ReciprocalIdentityRandom) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    auto s = random_series(rng, -2, 12);
    // force |leading| >= 0.1
    std::vector<cplx> c(s.coeffs().begin(), s.coeffs().end());
    if (std::abs(c[0]) < 0.1) c[0] = cplx(0.1 + 0.9 * std::abs(u(rng)), u(rng) * 0.5);
    s = TruncSeries(s.low_exp(), c);
    const auto r = reciprocal(s);
    const auto p = mul(s, r);
    EXPECT_EQ(p.low_exp(), 0);
    // Residual scaled by the magnitude of the convolution terms: reciprocal
    // coefficients grow like |leading|^-n, so the absolute residual cannot be
    // bounded independently of length.
    for (int e = 0; e <= p.high_exp(); ++e) {
      double scale = 0.0;
      for (int k = s.low_exp(); k <= s.high_exp(); ++k)
        if (e - k >= r.low_exp() && e - k <= r.high_exp())
          scale += std::abs(s.coefficient(k)) * std::abs(r.coefficient(e - k));
      EXPECT_LE(std::abs(p.coefficient(e) - (e == 0 ? 1.0 : 0.0)), 1e-13 * scale) << e;
    }
  }
}

TEST(Series, ResidueExtraction) {
  EXPECT_EQ(residue(TruncSeries::monomial(-1, 1.0, 3)), cplx(1.0));
  EXPECT_EQ(residue(TruncSeries::monomial(-2, 1.0, 3)), cplx{});
  EXPECT_THROW(residue(TruncSeries::monomial(-4, 1.0, -2)), InputError);
}

TEST(Series, ResidueOfS4Kernel) {
  // Res z e^{i pi z} sin(pi t z)/((e^{2 pi i z}-1) z^2) at t = 1/2: the
  // leading term is (pi t z)/(2 pi i z) * z^{-1}, so the residue is t/(2i).
  // Independently confirmed by a symbolic residue: -0.25 i.
  const int high = 6;
  auto s = mul(exp_linear(I * pi, Window{0, high}), sin_linear(pi * 0.5, Window{0, high}));
  s = mul(s, bose_kernel(high));
  s = shift(s, -1);
  const cplx r = residue(s);
  EXPECT_NEAR(r.real(), 0.0, 1e-15);
  EXPECT_NEAR(r.imag(), -0.25, 1e-15);
}

TEST(Series, ResidueIsLinear) {
  std::mt19937_64 rng(5);
  const auto a = random_series(rng, -4, 6);
  const auto b = random_series(rng, -3, 6);
  const cplx x(0.3, -0.8), y(-1.1, 0.2);
  const cplx lhs = residue(add(scale(x, a), scale(y, b)));
  EXPECT_LE(std::abs(lhs - (x * residue(a) + y * residue(b))), 1e-15);
}

TEST(Series, HalfAngleKernelIsEven) {
  // e^{pi i z} z/(e^{2 pi i z} - 1) = z/(2 i sin pi z) is even.
  const int high = 20;
  const auto s = shift(mul(exp_linear(I * pi, Window{0, high}), bose_kernel(high)), 1);
  for (int e = 1; e <= s.high_exp(); e += 2) EXPECT_LE(std::abs(s.coefficient(e)), 1e-13);
  EXPECT_NEAR(s.coefficient(0).imag(), -1.0 / (2.0 * pi), 1e-15);
}
