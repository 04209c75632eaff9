#pragma once

// Exponential sums over the nonzero integers as residues at zero.
//
// For f(z) = sum_{k>=1} a_k z^{-k}:
//   0 < gamma < 2 pi:   sum_{m != 0} e^{i m gamma} f(m) = -2 pi i Res_0 f(z) e^{i gamma z} / (e^{2 pi i z} - 1)
//  -2 pi < gamma < 0:   sum_{m != 0} e^{i m gamma} f(m) = -2 pi i Res_0 f(z) e^{i gamma z} / (1 - e^{-2 pi i z})
//
// For a_1 != 0 the left side converges only conditionally; it is understood as
// the Abel limit r -> 1 of the damped sum with weights r^{|m|}.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include "error.hpp"
#include "extrapolate.hpp"
#include "series.hpp"

namespace dhloc {

/// f(z) = sum_k a_k z^{-k} with every k >= 1.
class RationalPoleFunction {
 public:
  explicit RationalPoleFunction(std::map<int, cplx> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw InputError("rational pole function needs at least one coefficient");
    if (a_.begin()->first < 1) throw InputError("pole orders must be >= 1");
  }

  const std::map<int, cplx>& coeffs() const noexcept { return a_; }
  int max_order() const noexcept { return a_.rbegin()->first; }

  cplx operator()(double x) const {
    cplx v{};
    for (const auto& [k, a] : a_) v += a * std::pow(x, -k);
    return v;
  }

 private:
  std::map<int, cplx> a_;
};

/// Kernel choice for the negative gamma range.
enum class NegativeKernel {
  one_minus_inverse,  // 1/(1 - e^{-2 pi i z})
  shifted_bose,       // e^{2 pi i z}/(e^{2 pi i z} - 1), the same function
};

inline cplx exp_sum_residue(const RationalPoleFunction& f, double gamma,
                            NegativeKernel neg = NegativeKernel::one_minus_inverse) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(std::abs(gamma) < two_pi) || gamma == 0.0)
    throw InputError("gamma outside lemma range");

  const int high = f.max_order() + 4;
  std::map<int, cplx> laurent;
  for (const auto& [k, a] : f.coeffs()) laurent[-k] = a;

  TruncSeries kernel;
  if (gamma > 0.0) {
    kernel = bose_kernel(high);
  } else if (neg == NegativeKernel::one_minus_inverse) {
    const TruncSeries one = TruncSeries::monomial(0, 1.0, high + 2);
    kernel = reciprocal(sub(one, exp_linear(cplx(0.0, -two_pi), Window{0, high + 2})));
  } else {
    kernel = mul(exp_linear(cplx(0.0, two_pi), Window{0, high}), bose_kernel(high));
  }
  const TruncSeries integrand =
      mul(mul(TruncSeries::laurent(laurent, high), kernel),
          exp_linear(cplx(0.0, gamma), Window{0, high}));
  return cplx(0.0, -two_pi) * residue(integrand);
}

/// sum_{0 < |m| <= M} e^{i m gamma} f(m) r^{|m|}
inline cplx exp_sum_partial(const RationalPoleFunction& f, double gamma, long M,
                            double damping_r = 1.0) {
  if (M < 1) throw InputError("M must be >= 1");
  if (!(damping_r > 0.0 && damping_r <= 1.0)) throw InputError("damping r must lie in (0,1]");
  cplx sum{};
  double rm = 1.0;
  for (long m = 1; m <= M; ++m) {
    rm *= damping_r;
    const double x = static_cast<double>(m);
    const cplx e = std::polar(1.0, x * gamma);
    sum += rm * (e * f(x) + std::conj(e) * f(-x));
  }
  return sum;
}

/// Damped partial sums at several radii, computed in one pass and
/// extrapolated to r = 1 in h = 1 - r.
inline Extrapolation<cplx> exp_sum_abel(const RationalPoleFunction& f, double gamma, long M,
                                        std::span<const double> radii) {
  if (M < 1) throw InputError("M must be >= 1");
  if (radii.empty()) throw InputError("need at least one damping radius");
  for (double r : radii)
    if (!(r > 0.0 && r <= 1.0)) throw InputError("damping r must lie in (0,1]");

  const std::size_t nr = radii.size();
  std::vector<cplx> sums(nr);
  std::vector<double> rm(nr, 1.0);
  std::vector<std::pair<int, cplx>> terms(f.coeffs().begin(), f.coeffs().end());
  for (long m = 1; m <= M; ++m) {
    const double x = static_cast<double>(m);
    const cplx e = std::polar(1.0, x * gamma);
    const double inv = 1.0 / x;
    cplx fp{}, fm{};
    double p = 1.0;
    int k = 0;
    for (const auto& [order, a] : terms) {
      while (k < order) { p *= inv; ++k; }
      fp += a * p;
      fm += (order % 2 == 0 ? a : -a) * p;
    }
    const cplx term = e * fp + std::conj(e) * fm;
    for (std::size_t j = 0; j < nr; ++j) {
      rm[j] *= radii[j];
      sums[j] += rm[j] * term;
    }
  }
  std::vector<double> h(nr);
  for (std::size_t j = 0; j < nr; ++j) h[j] = 1.0 - radii[j];
  return richardson_to_zero<cplx>(h, sums);
}

}  // namespace dhloc
