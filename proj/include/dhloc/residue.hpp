#pragma once

// Duistermaat-Heckman density of a quasi-Hamiltonian SU(2)-space from its
// fixed-point data, by residues at z = 0.
//
// For a component F with data c(z) = sum_k c_k z^{-k} and P = 4 pi^2 i / sqrt 2:
//
//   t < mu_F:  rho_F(t) = -P / sin(pi t) * Res z e^{pi i mu_F z} sin(pi t z) c(z) / (e^{2 pi i z} - 1)
//   t > mu_F:  rho_F(t) = +P / sin(pi t) * Res z e^{pi i (mu_F+1) z} sin(pi (1-t) z) c(z) / (e^{2 pi i z} - 1)
//   at  e:     rho_F    = -P * Res z^2 e^{pi i mu_F z} c(z) / (e^{2 pi i z} - 1)
//   at -e:     rho_F    = +P * Res z^2 e^{pi i (mu_F+1) z} c(z) / (e^{2 pi i z} - 1)
//
// each halved when mu_F is 0 or 1. The 1/sin(pi t) prefactor follows from
// summing the character series with the exponential-sum lemma (see
// lemma.hpp); the central formulas are its t -> 0 and t -> 1 limits.
// docs/derivation.md carries the full chain.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "series.hpp"

namespace dhloc {

enum class WallPolicy { error, left_limit, right_limit };

struct EvalOptions {
  double imag_tolerance = 1e-9;
  WallPolicy wall_policy = WallPolicy::error;
};

/// Which residue formula applies to a component.
enum class Branch { below_mu, above_mu };

enum class CentralElement { identity, minus_identity };

namespace detail {

inline constexpr double kResiduePrefactor = 4.0 * std::numbers::pi * std::numbers::pi /
                                            std::numbers::sqrt2;  // times i

/// Res_0 of z^{zpow} e^{pi i w z} g(z) c(z) / (e^{2 pi i z} - 1), where g
/// is sin(pi s z) when s is given and 1 otherwise.
inline cplx kernel_residue(const LaurentData& c, int zpow, double w,
                           std::optional<double> s) {
  const int K = c.rbegin()->first;
  const int high = K + 4;
  std::map<int, cplx> laurent;
  for (const auto& [k, v] : c) laurent[-k] = v;
  constexpr double pi = std::numbers::pi;
  TruncSeries prod = mul(TruncSeries::laurent(laurent, high), bose_kernel(high));
  prod = mul(prod, exp_linear(cplx(0.0, pi * w), Window{0, high}));
  if (s) prod = mul(prod, sin_linear(pi * *s, Window{0, high}));
  return residue(shift(prod, zpow));
}

inline void check_real(const cplx& v, double tol) {
  if (!(std::abs(v.imag()) <= tol * (1.0 + std::abs(v.real()))))
    throw NumericError("non-real density (check input data)");
}

inline void check_open_alcove(double t) {
  if (!(t > 0.0 && t < 1.0)) throw InputError("t out of open alcove");
}

}  // namespace detail

/// Complex value of one branch formula at t, without the realness check.
/// Both branches are entire in t apart from the 1/sin(pi t) factor, so they
/// may be evaluated on either side of mu_F (used for one-sided wall limits).
inline cplx branch_density_complex(const FixedComponent& f, double t, Branch b) {
  detail::check_open_alcove(t);
  const double mu = f.mu().value();
  const double half = f.central() ? 0.5 : 1.0;
  const cplx pref = cplx(0.0, detail::kResiduePrefactor) * half / std::sin(std::numbers::pi * t);
  if (b == Branch::below_mu)
    return -pref * detail::kernel_residue(f.euler_integral(), 1, mu, t);
  return pref * detail::kernel_residue(f.euler_integral(), 1, mu + 1.0, 1.0 - t);
}

/// Branch selected for t, honouring the wall policy when t == mu_F.
inline Branch select_branch(const FixedComponent& f, double t, const EvalOptions& opts) {
  const double mu = f.mu().value();
  if (t < mu) return Branch::below_mu;
  if (t > mu) return Branch::above_mu;
  switch (opts.wall_policy) {
    case WallPolicy::left_limit: return Branch::below_mu;
    case WallPolicy::right_limit: return Branch::above_mu;
    case WallPolicy::error: break;
  }
  throw NumericError("evaluation on a wall (t = " + f.mu().text() + ", component '" +
                     f.label() + "')");
}

struct ComponentValue {
  double value = 0.0;
  double imag_residual = 0.0;
};

inline ComponentValue component_density_detailed(const FixedComponent& f, double t,
                                                 const EvalOptions& opts = {}) {
  if (!(opts.imag_tolerance > 0.0)) throw InputError("imag_tolerance must be positive");
  detail::check_open_alcove(t);
  const cplx v = branch_density_complex(f, t, select_branch(f, t, opts));
  detail::check_real(v, opts.imag_tolerance);
  return {v.real(), std::abs(v.imag())};
}

inline double component_density(const FixedComponent& f, double t, const EvalOptions& opts = {}) {
  return component_density_detailed(f, t, opts).value;
}

inline DensityResult density(const QHSpace& space, double t, const EvalOptions& opts = {}) {
  DensityResult r;
  r.t = t;
  for (const auto& f : space.components()) {
    const auto cv = component_density_detailed(f, t, opts);
    r.per_component[f.label()] = cv.value;
    r.total += cv.value;
    r.max_imag_residual = std::max(r.max_imag_residual, cv.imag_residual);
  }
  return r;
}

inline cplx central_component_complex(const FixedComponent& f, CentralElement which) {
  const double mu = f.mu().value();
  const double half = f.central() ? 0.5 : 1.0;
  const cplx pref = cplx(0.0, detail::kResiduePrefactor) * half;
  if (which == CentralElement::identity)
    return -pref * detail::kernel_residue(f.euler_integral(), 2, mu, std::nullopt);
  return pref * detail::kernel_residue(f.euler_integral(), 2, mu + 1.0, std::nullopt);
}

/// Density at e or -e. Only meaningful when the central element is a regular
/// value of the moment map, which cannot be checked from fixed-point data.
inline DensityResult central_density_detailed(const QHSpace& space, CentralElement which,
                                              const EvalOptions& opts = {}) {
  if (!(opts.imag_tolerance > 0.0)) throw InputError("imag_tolerance must be positive");
  DensityResult r;
  r.t = which == CentralElement::identity ? 0.0 : 1.0;
  for (const auto& f : space.components()) {
    const cplx v = central_component_complex(f, which);
    detail::check_real(v, opts.imag_tolerance);
    r.per_component[f.label()] = v.real();
    r.total += v.real();
    r.max_imag_residual = std::max(r.max_imag_residual, std::abs(v.imag()));
  }
  return r;
}

inline double central_density(const QHSpace& space, CentralElement which,
                              const EvalOptions& opts = {}) {
  return central_density_detailed(space, which, opts).total;
}

/// Vol(M_g) = k (2 sin(pi t)/sqrt 2) rho(g) for g = exp(t rho), 0 < t < 1.
inline double volume_from_density(const QHSpace& space, double t, double rho) {
  return space.stabilizer_order() * 2.0 * std::sin(std::numbers::pi * t) /
         std::numbers::sqrt2 * rho;
}

/// Vol(M_g) = k (2 pi/sqrt 2) rho(g) for g = +-e.
inline double central_volume_from_density(const QHSpace& space, double rho) {
  return space.stabilizer_order() * 2.0 * std::numbers::pi / std::numbers::sqrt2 * rho;
}

inline double reduced_volume(const QHSpace& space, double t, const EvalOptions& opts = {}) {
  return volume_from_density(space, t, density(space, t, opts).total);
}

inline double reduced_volume(const QHSpace& space, CentralElement which,
                             const EvalOptions& opts = {}) {
  return central_volume_from_density(space, central_density(space, which, opts));
}

struct ScanRow {
  double t = 0.0;
  std::optional<DensityResult> result;
  double volume = 0.0;
  bool wall = false;    // t hit a wall under WallPolicy::error
  std::string error;    // nonempty when the point failed
};

/// Evaluates every grid point in order. Failures are recorded per row unless
/// `fail_fast` is set, in which case the first error propagates.
inline std::vector<ScanRow> scan(const QHSpace& space, const std::vector<double>& t_grid,
                                 const EvalOptions& opts = {}, bool fail_fast = false) {
  std::vector<ScanRow> rows;
  rows.reserve(t_grid.size());
  for (double t : t_grid) {
    ScanRow row;
    row.t = t;
    try {
      row.result = density(space, t, opts);
      row.volume = volume_from_density(space, t, row.result->total);
    } catch (const Error& e) {
      if (fail_fast) throw;
      row.error = e.what();
      row.wall = row.error.starts_with("evaluation on a wall");
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace dhloc
