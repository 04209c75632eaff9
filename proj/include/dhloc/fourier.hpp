#pragma once

// Independent route to the DH density: Fourier coefficients from the
// localization formula, summed back as a character series.
//
//   <rho, chi_n> = (n+1) sum_{F in full fixed set} c_F(n+1) e^{pi i (n+1) mu_F}
//   rho(t)       = (2 pi / sqrt 2) sum_n <rho, chi_n> chi_n(t),
//   chi_n(t)     = sin(pi (n+1) t) / sin(pi t).

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"
#include "extrapolate.hpp"
#include "model.hpp"

namespace dhloc {

enum class SummationKind { partial, abel, cesaro };

struct SummationMethod {
  SummationKind kind = SummationKind::abel;
  long terms = 100000;
  double abel_r = 0.99;
  /// Extra refinement levels extrapolated to the limit. For Abel the radii are
  /// 1 - (1 - abel_r)/2^j; for Cesaro the term counts are terms * 2^j.
  int richardson_levels = 2;
  /// Explicit Abel radii, overriding abel_r/richardson_levels when nonempty.
  std::vector<double> radii;
  /// Target accuracy; successive extrapolation levels that disagree by more
  /// than ten times this flag the result as non-convergent.
  double tolerance = 1e-3;

  void validate() const {
    if (terms < 1) throw InputError("summation needs at least one term");
    if (kind == SummationKind::abel && radii.empty() && !(abel_r > 0.0 && abel_r < 1.0))
      throw InputError("abel_r must lie in (0,1)");
    for (double r : radii)
      if (!(r > 0.0 && r < 1.0)) throw InputError("abel radii must lie in (0,1)");
    if (richardson_levels < 0) throw InputError("richardson_levels must be >= 0");
    if (!(tolerance > 0.0)) throw InputError("summation tolerance must be positive");
  }

  std::vector<double> abel_radii() const {
    if (!radii.empty()) return radii;
    std::vector<double> out;
    double h = 1.0 - abel_r;
    for (int j = 0; j <= richardson_levels; ++j, h /= 2) out.push_back(1.0 - h);
    return out;
  }
};

namespace detail {

inline cplx family_term(const LaurentData& c, double mu, double m) {
  cplx s{};
  for (const auto& [k, v] : c) s += v * std::pow(m, -k);
  return s * std::polar(1.0, std::numbers::pi * m * mu);
}

}  // namespace detail

inline cplx fourier_coefficient(const QHSpace& space, long n) {
  if (n < 0) throw InputError("Fourier index must be >= 0");
  const double m = static_cast<double>(n + 1);
  cplx sum{};
  for (const auto& f : space.components())
    for (const auto& member : expand_family(f))
      sum += detail::family_term(member.euler_integral, member.mu, m);
  return m * sum;
}

/// Coefficients for n = 0 .. count-1.
inline std::vector<cplx> fourier_coefficients(const QHSpace& space, long count) {
  std::vector<cplx> out(static_cast<std::size_t>(std::max(0L, count)));
  for (long n = 0; n < count; ++n) out[static_cast<std::size_t>(n)] = fourier_coefficient(space, n);
  return out;
}

inline double character(long n, double t) {
  const double pi = std::numbers::pi;
  return std::sin(pi * static_cast<double>(n + 1) * t) / std::sin(pi * t);
}

struct Reconstruction {
  double value = 0.0;
  double imag_residual = 0.0;
  /// |last - previous| between the two finest extrapolation levels.
  double level_delta = 0.0;
};

inline Reconstruction reconstruct_density(const QHSpace& space, double t,
                                          const SummationMethod& method = {}) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("t out of open alcove");
  method.validate();
  constexpr double scale = 2.0 * std::numbers::pi / std::numbers::sqrt2;

  const long max_terms =
      method.kind == SummationKind::cesaro ? method.terms << method.richardson_levels : method.terms;
  std::vector<cplx> a = fourier_coefficients(space, max_terms);
  for (long n = 0; n < max_terms; ++n) a[static_cast<std::size_t>(n)] *= character(n, t);

  Extrapolation<cplx> ex;
  switch (method.kind) {
    case SummationKind::partial: {
      cplx s{};
      for (const auto& x : a) s += x;
      ex = {s, s};
      break;
    }
    case SummationKind::abel: {
      const auto radii = method.abel_radii();
      std::vector<cplx> sums(radii.size());
      std::vector<double> h(radii.size());
      for (std::size_t j = 0; j < radii.size(); ++j) {
        double w = 1.0;
        cplx s{};
        for (const auto& x : a) {
          s += w * x;
          w *= radii[j];
        }
        sums[j] = s;
        h[j] = 1.0 - radii[j];
      }
      ex = richardson_to_zero<cplx>(h, sums);
      break;
    }
    case SummationKind::cesaro: {
      // Fejer means sigma_N = sum_{n<N} (1 - n/N) a_n, extrapolated in 1/N.
      std::vector<cplx> sums;
      std::vector<double> h;
      for (int j = 0; j <= method.richardson_levels; ++j) {
        const long N = method.terms << j;
        cplx s{};
        for (long n = 0; n < N; ++n)
          s += (1.0 - static_cast<double>(n) / static_cast<double>(N)) * a[static_cast<std::size_t>(n)];
        sums.push_back(s);
        h.push_back(1.0 / static_cast<double>(N));
      }
      ex = richardson_to_zero<cplx>(h, sums);
      break;
    }
  }
  Reconstruction r{scale * ex.value.real(), scale * std::abs(ex.value.imag()),
                   scale * std::abs(ex.value - ex.previous)};
  if (r.level_delta > 10.0 * method.tolerance)
    throw NumericError("non-convergent summation: extrapolation levels differ by " +
                       std::to_string(r.level_delta));
  return r;
}

struct QuadratureOptions {
  double delta = 1e-9;
  double tolerance = 1e-12;
  unsigned max_depth = 20;
  /// Interior points where the density may have a kink (walls).
  std::vector<double> breakpoints;
  /// Absolute error estimate above which the result is rejected.
  double max_error = 1e-8;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Vol G * int_0^1 rho(t) chi_n(t) 2 sin^2(pi t) dt, the Weyl-integration
/// pairing of a class function with chi_n. The weight is folded into the
/// integrand as 2 sin(pi t) sin(pi (n+1) t), which stays bounded when rho
/// blows up like 1/sin(pi t) at the ends.
inline QuadratureResult coefficient_quadrature(const std::function<double(double)>& rho, long n,
                                               const QuadratureOptions& quad = {}) {
  if (n < 0) throw InputError("Fourier index must be >= 0");
  const double pi = std::numbers::pi;
  const double m = static_cast<double>(n + 1);
  auto integrand = [&](double t) {
    return rho(t) * 2.0 * std::sin(pi * t) * std::sin(pi * m * t);
  };

  std::vector<double> cuts{quad.delta};
  for (double b : quad.breakpoints)
    if (b > quad.delta && b < 1.0 - quad.delta) cuts.push_back(b);
  cuts.push_back(1.0 - quad.delta);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  QuadratureResult r;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    r.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, cuts[i], cuts[i + 1], quad.max_depth, quad.tolerance, &err);
    r.error_estimate += err;
  }
  r.value *= Normalization::vol_G;
  r.error_estimate *= Normalization::vol_G;
  if (!(r.error_estimate <= quad.max_error))
    throw NumericError("quadrature did not converge (error estimate " +
                       std::to_string(r.error_estimate) + ")");
  return r;
}

}  // namespace dhloc
