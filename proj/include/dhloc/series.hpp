#pragma once

// Truncated Laurent series in one variable z with complex double coefficients.
//
// A series tracks the exponents low..high; every coefficient inside that
// window is exact, everything above `high` is unknown. Arithmetic shrinks the
// window so that unknown terms never leak into reported coefficients.

#include <algorithm>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"

namespace dhloc {

using cplx = std::complex<double>;

/// Inclusive exponent range [low, high].
struct Window {
  int low = 0;
  int high = 0;

  bool contains(int e) const noexcept { return low <= e && e <= high; }
};

class TruncSeries {
 public:
  /// The canonical zero: exactly zero to every order.
  TruncSeries() = default;

  /// Zero-filled series over `w`.
  explicit TruncSeries(Window w) : low_(w.low), exact_zero_(false) {
    if (w.high < w.low) throw InputError("empty series window");
    coeffs_.assign(static_cast<std::size_t>(w.high - w.low + 1), cplx{});
  }

  TruncSeries(int low, std::vector<cplx> coeffs)
      : low_(low), coeffs_(std::move(coeffs)), exact_zero_(false) {
    if (coeffs_.empty()) throw InputError("empty series window");
  }

  /// c z^e, tracked up to `high`.
  static TruncSeries monomial(int e, cplx c, int high) {
    TruncSeries s(Window{std::min(e, high), high});
    if (e <= high) s.at(e) = c;
    return s;
  }

  /// Finite Laurent polynomial sum_e terms[e] z^e, tracked up to `high`.
  static TruncSeries laurent(const std::map<int, cplx>& terms, int high) {
    if (terms.empty()) return TruncSeries(Window{high, high});
    int low = std::min(terms.begin()->first, high);
    TruncSeries s(Window{low, high});
    for (const auto& [e, c] : terms)
      if (e <= high) s.at(e) = c;
    return s;
  }

  bool is_canonical_zero() const noexcept { return exact_zero_; }
  int low_exp() const noexcept { return low_; }
  int high_exp() const noexcept {
    return exact_zero_ ? std::numeric_limits<int>::max()
                       : low_ + static_cast<int>(coeffs_.size()) - 1;
  }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^e. Exponents below the window are zero; exponents
  /// above it are unknown and rejected.
  cplx coefficient(int e) const {
    if (exact_zero_ || e < low_) return {};
    if (e > high_exp())
      throw std::out_of_range("exponent " + std::to_string(e) +
                              " beyond truncation order " +
                              std::to_string(high_exp()));
    return coeffs_[static_cast<std::size_t>(e - low_)];
  }

  /// Lowest exponent carrying a nonzero coefficient, if any.
  std::optional<int> valuation() const noexcept {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (coeffs_[i] != cplx{}) return low_ + static_cast<int>(i);
    return std::nullopt;
  }

 private:
  cplx& at(int e) { return coeffs_[static_cast<std::size_t>(e - low_)]; }

  friend TruncSeries add(const TruncSeries&, const TruncSeries&);
  friend TruncSeries mul(const TruncSeries&, const TruncSeries&);
  friend TruncSeries scale(cplx, const TruncSeries&);
  friend TruncSeries shift(const TruncSeries&, int);
  friend TruncSeries reciprocal(const TruncSeries&);

  int low_ = 0;
  std::vector<cplx> coeffs_;
  bool exact_zero_ = true;
};

inline TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  Window w{std::min(a.low_, b.low_), std::min(a.high_exp(), b.high_exp())};
  if (w.high < w.low) w.low = w.high;
  TruncSeries r(w);
  for (int e = w.low; e <= w.high; ++e) r.at(e) = a.coefficient(e) + b.coefficient(e);
  return r;
}

inline TruncSeries scale(cplx c, const TruncSeries& s) {
  if (s.exact_zero_) return s;
  TruncSeries r = s;
  for (auto& x : r.coeffs_) x *= c;
  return r;
}

inline TruncSeries sub(const TruncSeries& a, const TruncSeries& b) {
  return add(a, scale(-1.0, b));
}

/// Cauchy product. The coefficient at e is exact iff e <= a.high + b.low and
/// e <= b.high + a.low, which fixes the result window.
inline TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
  if (a.exact_zero_ || b.exact_zero_) return TruncSeries{};
  const int low = a.low_ + b.low_;
  const int high = std::min(a.high_exp() + b.low_, b.high_exp() + a.low_);
  TruncSeries r(Window{low, high});
  const int na = static_cast<int>(a.coeffs_.size());
  const int nb = static_cast<int>(b.coeffs_.size());
  for (int i = 0; i < na; ++i) {
    if (a.coeffs_[i] == cplx{}) continue;
    for (int j = 0; j < nb && i + j <= high - low; ++j)
      r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return r;
}

/// Multiply by z^k.
inline TruncSeries shift(const TruncSeries& s, int k) {
  if (s.exact_zero_) return s;
  TruncSeries r = s;
  r.low_ += k;
  return r;
}

/// 1/s via the coefficient recurrence. If s = z^v (a_0 + a_1 z + ...), the
/// result starts at z^{-v} and is exact through z^{high - 2v}.
inline TruncSeries reciprocal(const TruncSeries& s) {
  const auto v = s.exact_zero_ ? std::nullopt : s.valuation();
  if (!v) throw NumericError("non-invertible series");
  const int len = s.high_exp() - *v + 1;
  const cplx* a = s.coeffs_.data() + (*v - s.low_);
  std::vector<cplx> b(static_cast<std::size_t>(len));
  const cplx inv = 1.0 / a[0];
  b[0] = inv;
  for (int n = 1; n < len; ++n) {
    cplx acc{};
    for (int j = 1; j <= n; ++j) acc += a[j] * b[n - j];
    b[n] = -inv * acc;
  }
  return TruncSeries(-*v, std::move(b));
}

/// Coefficient of z^{-1}.
inline cplx residue(const TruncSeries& s) {
  if (s.high_exp() < -1) throw InputError("window excludes residue exponent");
  return s.coefficient(-1);
}

/// exp(a z) over `w`: a^k/k! at k >= 0.
inline TruncSeries exp_linear(cplx a, Window w) {
  if (!w.contains(0)) throw InputError("exp_linear window must include exponent 0");
  cplx term = 1.0;
  std::vector<cplx> c(static_cast<std::size_t>(w.high - w.low + 1));
  for (int k = 0; k <= w.high; ++k) {
    c[static_cast<std::size_t>(k - w.low)] = term;
    term *= a / static_cast<double>(k + 1);
  }
  return TruncSeries(w.low, std::move(c));
}

/// sin(b z) over `w`: (-1)^k b^{2k+1}/(2k+1)! at odd exponents.
inline TruncSeries sin_linear(cplx b, Window w) {
  if (!w.contains(1)) throw InputError("sin_linear window must include exponent 1");
  std::vector<cplx> c(static_cast<std::size_t>(w.high - w.low + 1));
  cplx term = b;  // b^{2k+1}/(2k+1)! with alternating sign
  for (int e = 1; e <= w.high; e += 2) {
    c[static_cast<std::size_t>(e - w.low)] = term;
    term *= -b * b / static_cast<double>((e + 1) * (e + 2));
  }
  return TruncSeries(w.low, std::move(c));
}

/// 1/(e^{2 pi i z} - 1) tracked through z^{high}. Built as z^{-1} times the
/// reciprocal of (e^{2 pi i z} - 1)/z, whose coefficients are
/// B_n (2 pi i)^{n-1}/n!.
inline TruncSeries bose_kernel(int high) {
  if (high < -1) throw InputError("bose_kernel window must include exponent -1");
  const cplx w = cplx(0.0, 2.0 * std::numbers::pi);
  // (e^{wz} - 1)/z = sum_{n>=0} w^{n+1} z^n/(n+1)!
  std::vector<cplx> c(static_cast<std::size_t>(high + 2));
  cplx term = w;
  for (std::size_t n = 0; n < c.size(); ++n) {
    c[n] = term;
    term *= w / static_cast<double>(n + 2);
  }
  return shift(reciprocal(TruncSeries(0, std::move(c))), -1);
}

}  // namespace dhloc
