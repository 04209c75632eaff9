#pragma once

// Reference spaces with closed-form answers.

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "model.hpp"
#include "series.hpp"

namespace dhloc {

/// S^4 with SU(2) acting by rotations: fixed points at e and -e with Euler
/// classes -+<rho, xi>^2, i.e. -+pi^2 z^2 at xi = 2 pi i z rho. The sign
/// attached to each point is the one reproducing the per-point densities
/// (1-t)/(sqrt2 sin pi t) at e and t/(sqrt2 sin pi t) at -e.
inline QHSpace make_s4() {
  const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
  return QHSpace("s4",
                 {FixedComponent("e", AlcoveValue::parse("0"), {{2, cplx(inv_pi2, 0.0)}}),
                  FixedComponent("-e", AlcoveValue::parse("1"), {{2, cplx(-inv_pi2, 0.0)}})},
                 1);
}

/// Fusion product of n copies of the double D(SU(2)), i.e. SU(2)^{2n}. The
/// fixed set is the torus T^{2n} mapped to e, with volume (Vol T)^{2n} = 2^n
/// and Euler class (2z)^{2n} pi^{2n}; the generic stabilizer is the centre.
inline QHSpace make_product_space(int n) {
  if (n < 1) throw InputError("product space needs n >= 1");
  if (n > 30) throw InputError("product space order above 30 is not supported");
  const double c = std::pow(2.0, -n) * std::pow(std::numbers::pi, -2.0 * n);
  return QHSpace("product:" + std::to_string(n),
                 {FixedComponent("torus", AlcoveValue::parse("0"), {{2 * n, cplx(c, 0.0)}})},
                 2);
}

/// rho(t) = i sqrt2 / (2^n pi^{2n-2} (2n-2)! sin pi t)
///          * d^{2n-2}/dz^{2n-2} [e^{pi i z} sin(z pi (1-t)) / (e^{2 pi i z} - 1)] at z = 0,
/// with the derivative taken as (2n-2)! times a Taylor coefficient.
inline double product_closed_form(int n, double t) {
  if (n < 1) throw InputError("product space needs n >= 1");
  if (!(t > 0.0 && t < 1.0)) throw InputError("t out of open alcove");
  const double pi = std::numbers::pi;
  const int order = 2 * n - 2;
  const int high = order + 4;
  const TruncSeries g = mul(mul(exp_linear(cplx(0.0, pi), Window{0, high}),
                                sin_linear(pi * (1.0 - t), Window{0, high})),
                            bose_kernel(high));
  const cplx taylor = g.coefficient(order);
  const cplx v = cplx(0.0, std::numbers::sqrt2) * taylor /
                 (std::pow(2.0, n) * std::pow(pi, order) * std::sin(pi * t));
  return v.real();
}

/// Volume of the moduli space for the double, 1 - t.
inline double witten_volume_n1(double t) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("t out of open alcove");
  return 1.0 - t;
}

/// Selector grammar: "s4", "double" (= product:1), "product:N".
inline QHSpace builtin_by_name(std::string_view name) {
  if (name == "s4") return make_s4();
  if (name == "double") return make_product_space(1);
  constexpr std::string_view prefix = "product:";
  if (name.starts_with(prefix)) {
    const std::string_view digits = name.substr(prefix.size());
    int n = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && end == digits.data() + digits.size() && !digits.empty())
      return make_product_space(n);
  }
  throw InputError("unknown builtin space '" + std::string(name) +
                   "' (expected s4, double or product:N)");
}

}  // namespace dhloc
