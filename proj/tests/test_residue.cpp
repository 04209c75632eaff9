#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "dhloc/builtin.hpp"
#include "dhloc/extrapolate.hpp"
#include "dhloc/residue.hpp"
#include "oracles.hpp"

using namespace dhloc;
using dhloc::oracle::rel_err;

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt2 = std::numbers::sqrt2;

FixedComponent s4_minus_e() {
  return FixedComponent("-e", AlcoveValue::parse("1"), {{2, -1.0 / (pi * pi)}});
}

/// Richardson limit of g(h) as h -> 0 from h in {1e-2, 1e-3, 1e-4}.
template <typename G>
double limit_at_zero(G g) {
  const std::vector<double> h{1e-2, 1e-3, 1e-4};
  std::vector<double> v;
  for (double x : h) v.push_back(g(x));
  return richardson_to_zero<double>(h, v).value;
}

}  // namespace

TEST(ComponentDensity, S4MinusEAtQuarter) {
  EXPECT_NEAR(component_density(s4_minus_e(), 0.25), 0.25, 1e-14);
}

TEST(ComponentDensity, ZeroCoefficientsGiveZero) {
  const FixedComponent f("z", AlcoveValue::parse("0.4"), {{2, 0.0}, {3, 0.0}});
  EXPECT_EQ(component_density(f, 0.2), 0.0);
  EXPECT_EQ(component_density(f, 0.7), 0.0);
}

TEST(ComponentDensity, DoubleAtHalf) {
  const auto f = make_product_space(1).components().front();
  EXPECT_NEAR(component_density(f, 0.5), 0.17677669529663688, 1e-14);
}

TEST(ComponentDensity, OutOfAlcove) {
  const auto f = s4_minus_e();
  EXPECT_THROW(component_density(f, 0.0), InputError);
  EXPECT_THROW(component_density(f, 1.0), InputError);
  EXPECT_THROW(component_density(f, -0.1), InputError);
}

TEST(ComponentDensity, WallPolicies) {
  const FixedComponent f("w", AlcoveValue::parse("0.4"), {{2, 1.0 / (pi * pi)}});
  EXPECT_THROW(component_density(f, 0.4), NumericError);
  EXPECT_NO_THROW(component_density(f, 0.3999));
  const double left = component_density(f, 0.4, {1e-9, WallPolicy::left_limit});
  const double right = component_density(f, 0.4, {1e-9, WallPolicy::right_limit});
  const double eps = 1e-7;
  EXPECT_NEAR(left, component_density(f, 0.4 - eps), 1e-5);
  EXPECT_NEAR(right, component_density(f, 0.4 + eps), 1e-5);
}

TEST(ComponentDensity, NonRealDataIsRejected) {
  // A real c_3 breaks the conjugation symmetry of a genuine Euler integral.
  const FixedComponent f("bad", AlcoveValue::parse("0.5"), {{3, 1.0}});
  EXPECT_THROW(component_density(f, 0.3), NumericError);
  EXPECT_THROW(component_density(f, 0.3, {0.0, WallPolicy::error}), InputError);
}

TEST(Density, S4Closed) {
  const auto s4 = make_s4();
  for (double t : {0.05, 0.2, 0.5, 0.77, 0.95}) {
    const auto r = density(s4, t);
    EXPECT_LE(rel_err(r.total, 1.0 / (sqrt2 * std::sin(pi * t))), 1e-12);
    EXPECT_LE(rel_err(r.per_component.at("e"), (1 - t) / (sqrt2 * std::sin(pi * t))), 1e-12);
    EXPECT_LE(rel_err(r.per_component.at("-e"), t / (sqrt2 * std::sin(pi * t))), 1e-12);
    EXPECT_LE(r.max_imag_residual, 1e-12);
    EXPECT_NEAR(r.total, r.per_component.at("e") + r.per_component.at("-e"), 1e-15);
  }
}

TEST(Density, ProductSpaceAgainstSymbolicValues) {
  // Closed-form values evaluated symbolically (series coefficient of the
  // displayed derivative expression).
  EXPECT_LE(rel_err(density(make_product_space(2), 0.3).total, 0.013001226727352427), 1e-12);
  EXPECT_LE(rel_err(density(make_product_space(3), 0.4).total, 0.00058686623040114458), 1e-12);
}

TEST(Density, AllZeroSpace) {
  const QHSpace s("zero", {FixedComponent("z", AlcoveValue::parse("0.5"), {{2, 0.0}})}, 1);
  EXPECT_EQ(density(s, 0.3).total, 0.0);
}

TEST(CentralDensity, Examples) {
  const auto d = make_product_space(1);
  EXPECT_LE(rel_err(central_density(d, CentralElement::minus_identity), 0.11253953951963826),
            1e-13);
  const auto p2 = make_product_space(2);
  EXPECT_LE(rel_err(central_density(p2, CentralElement::minus_identity), 0.0093782949599698549),
            1e-13);
  EXPECT_NEAR(reduced_volume(p2, CentralElement::minus_identity), 1.0 / 12.0, 1e-14);
  EXPECT_NEAR(reduced_volume(d, CentralElement::minus_identity), 1.0, 1e-14);

  const QHSpace zero("zero", {FixedComponent("z", AlcoveValue::parse("0.5"), {{4, 0.0}})}, 1);
  EXPECT_EQ(central_density(zero, CentralElement::identity), 0.0);
}

TEST(ReducedVolume, Examples) {
  const auto s4 = make_s4();
  for (double t : {0.1, 0.35, 0.9}) EXPECT_NEAR(reduced_volume(s4, t), 1.0, 1e-12);
  EXPECT_NEAR(reduced_volume(make_product_space(1), 0.3), 0.7, 1e-13);
}

TEST(Scan, RowsAndOrder) {
  const auto s4 = make_s4();
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  const auto rows = scan(s4, grid);
  ASSERT_EQ(rows.size(), 9u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].t, grid[i]);
    ASSERT_TRUE(rows[i].result);
    EXPECT_NEAR(rows[i].volume, 1.0, 1e-10);
  }
  EXPECT_TRUE(scan(s4, {}).empty());
}

TEST(Scan, CollectsWallsWithoutFailing) {
  const QHSpace s("w", {FixedComponent("a", AlcoveValue::parse("0.5"), {{2, 1.0 / (pi * pi)}})},
                  1);
  const auto rows = scan(s, {0.25, 0.5, 0.75});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_TRUE(rows[0].result);
  EXPECT_FALSE(rows[1].result);
  EXPECT_TRUE(rows[1].wall);
  EXPECT_TRUE(rows[2].result);
  EXPECT_THROW(scan(s, {0.25, 0.5}, {}, true), NumericError);
}

TEST(Properties, RealnessOnRandomSpaces) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ut(0.013, 0.987);
  for (int trial = 0; trial < 100; ++trial) {
    const auto space = oracle::random_space(rng, 3);
    const double t = ut(rng);
    const auto r = density(space, t, {1e-9, WallPolicy::left_limit});
    EXPECT_LE(r.max_imag_residual, 1e-9 * (1.0 + std::abs(r.total)));
  }
}

TEST(Properties, WallLimitsMatchCentralFormulas) {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = oracle::random_component(rng, "f", oracle::random_mu_text(rng));
    const QHSpace one("one", {f}, 1);
    const double mu = f.mu().value();
    if (mu > 0.01) {
      // t -> 0+ stays on the t < mu branch
      const double lim = limit_at_zero([&](double h) { return component_density(f, h); });
      const double c = central_density(one, CentralElement::identity);
      EXPECT_NEAR(lim, c, 1e-6 * (1.0 + std::abs(c))) << "mu=" << mu;
    }
    if (mu < 0.99) {
      const double lim = limit_at_zero([&](double h) { return component_density(f, 1.0 - h); });
      const double c = central_density(one, CentralElement::minus_identity);
      EXPECT_NEAR(lim, c, 1e-6 * (1.0 + std::abs(c))) << "mu=" << mu;
    }
  }
}

TEST(Properties, LinearityAndScaling) {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const auto space = oracle::random_space(rng, 3);
    const double t = 0.123456;
    const auto base = density(space, t, {1e-9, WallPolicy::left_limit});
    double sum = 0.0;
    for (const auto& f : space.components())
      sum += component_density(f, t, {1e-9, WallPolicy::left_limit});
    EXPECT_NEAR(base.total, sum, 1e-13 * (1.0 + std::abs(sum)));

    const double lambda = -2.75;
    std::vector<FixedComponent> scaled;
    for (const auto& f : space.components()) {
      LaurentData c;
      for (const auto& [k, v] : f.euler_integral()) c[k] = lambda * v;
      scaled.emplace_back(f.label(), f.mu(), c);
    }
    const QHSpace s2("scaled", scaled, space.stabilizer_order());
    const auto r2 = density(s2, t, {1e-9, WallPolicy::left_limit});
    EXPECT_NEAR(r2.total, lambda * base.total, 1e-12 * (1.0 + std::abs(base.total)));
    EXPECT_NEAR(reduced_volume(s2, t, {1e-9, WallPolicy::left_limit}),
                lambda * reduced_volume(space, t, {1e-9, WallPolicy::left_limit}),
                1e-12 * (1.0 + std::abs(base.total)));
  }
}

TEST(Properties, AgreesWithPairedExponentialSums) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> ut(0.02, 0.98);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = oracle::random_component(rng, "f", oracle::random_mu_text(rng));
    const double t = ut(rng);
    if (t == f.mu().value()) continue;
    const cplx via_lemma = oracle::component_density_via_lemma(f, t);
    const cplx direct = branch_density_complex(f, t, t < f.mu().value() ? Branch::below_mu
                                                                        : Branch::above_mu);
    EXPECT_LE(std::abs(via_lemma - direct), 1e-12 * std::max(1.0, std::abs(direct)));
  }
}
