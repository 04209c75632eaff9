#pragma once

// Fixed-point data of quasi-Hamiltonian SU(2)-spaces.
//
// Conventions: the inner product is normalized so that the root has length
// squared 2, the alcove is [0,1] with t <-> exp(t rho), and each fixed
// component F of the Cartan circle is described by mu_F (Phi_F = exp(mu_F rho))
// together with the Laurent expansion
//     int_F exp(omega_F) / Eul(nu_F, 2 pi i z rho) = sum_k c_k z^{-k},  k >= 2.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"

namespace dhloc {

using cplx = std::complex<double>;

/// Power k -> coefficient c_k of z^{-k}.
using LaurentData = std::map<int, cplx>;

struct Normalization {
  static constexpr double vol_T = std::numbers::sqrt2;
  static constexpr double vol_G = std::numbers::sqrt2 / (2.0 * std::numbers::pi);
  static constexpr double rho_norm_sq = 0.5;
};

/// A point of the alcove [0,1] held as an exact decimal string, so that the
/// endpoint tests (mu == 0, mu == 1) are exact.
class AlcoveValue {
 public:
  static AlcoveValue parse(std::string_view text) {
    if (text.empty()) throw InputError("empty decimal");
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    auto all_digits = [](std::string_view s) {
      return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (whole.empty() || !all_digits(whole) ||
        (dot != std::string_view::npos && (frac.empty() || !all_digits(frac))))
      throw InputError("'" + std::string(text) + "' is not an exact decimal");

    auto all_zero = [](std::string_view s) {
      return std::all_of(s.begin(), s.end(), [](char c) { return c == '0'; });
    };
    const auto lead = whole.find_first_not_of('0');
    const std::string_view int_part =
        lead == std::string_view::npos ? std::string_view{} : whole.substr(lead);

    AlcoveValue v;
    v.text_ = std::string(text);
    v.is_zero_ = int_part.empty() && all_zero(frac);
    v.is_one_ = int_part == "1" && all_zero(frac);
    const bool above_one =
        (!int_part.empty() && int_part != "1") || (int_part == "1" && !all_zero(frac));
    if (above_one) throw InputError("mu out of alcove range");
    std::from_chars(text.data(), text.data() + text.size(), v.value_);
    return v;
  }

  /// Shortest round-trip decimal of a double in [0,1].
  static AlcoveValue from_double(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("mu out of alcove range");
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed);
    return parse(std::string_view(buf, static_cast<std::size_t>(end - buf)));
  }

  double value() const noexcept { return value_; }
  const std::string& text() const noexcept { return text_; }
  bool is_zero() const noexcept { return is_zero_; }
  bool is_one() const noexcept { return is_one_; }
  bool is_central() const noexcept { return is_zero_ || is_one_; }

  friend bool operator==(const AlcoveValue& a, const AlcoveValue& b) {
    return a.text_ == b.text_;
  }

 private:
  AlcoveValue() = default;
  std::string text_;
  double value_ = 0.0;
  bool is_zero_ = false;
  bool is_one_ = false;
};

/// One component F in F_+ of the T-fixed-point set.
class FixedComponent {
 public:
  FixedComponent(std::string label, AlcoveValue mu, LaurentData euler_integral)
      : label_(std::move(label)), mu_(std::move(mu)), c_(std::move(euler_integral)) {
    if (c_.empty()) throw InputError("Euler integral must have at least one coefficient");
    if (c_.begin()->first < 2) throw InputError("Euler integral must vanish to order >= 2");
  }

  const std::string& label() const noexcept { return label_; }
  const AlcoveValue& mu() const noexcept { return mu_; }
  const LaurentData& euler_integral() const noexcept { return c_; }
  bool central() const noexcept { return mu_.is_central(); }
  int max_pole_order() const noexcept { return c_.rbegin()->first; }

  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;

 private:
  std::string label_;
  AlcoveValue mu_;
  LaurentData c_;
};

/// Data of the Weyl partner F' = F^w. Its mu is signed and lies in [-1, 0];
/// it is only meaningful inside Fourier sums.
struct ConjugateData {
  double mu = 0.0;
  LaurentData euler_integral;
};

/// c'_k = (-1)^k c_k (the integral at -z), mu' = -mu.
inline ConjugateData conjugate_component(const FixedComponent& f) {
  ConjugateData d{-f.mu().value(), {}};
  for (const auto& [k, c] : f.euler_integral()) d.euler_integral[k] = (k % 2 == 0) ? c : -c;
  return d;
}

inline ConjugateData conjugate_component(const ConjugateData& f) {
  ConjugateData d{-f.mu, {}};
  for (const auto& [k, c] : f.euler_integral) d.euler_integral[k] = (k % 2 == 0) ? c : -c;
  return d;
}

/// Every member of the full fixed-point family generated by one stored
/// component: {F, F'} for non-central F, {F} for central F.
inline std::vector<ConjugateData> expand_family(const FixedComponent& f) {
  std::vector<ConjugateData> out{{f.mu().value(), f.euler_integral()}};
  if (!f.central()) out.push_back(conjugate_component(f));
  return out;
}

class QHSpace {
 public:
  /// Components are kept sorted by label.
  QHSpace(std::string name, std::vector<FixedComponent> components, int stabilizer_order)
      : name_(std::move(name)), components_(std::move(components)), k_(stabilizer_order) {
    if (components_.empty()) throw InputError("space must have at least one component");
    if (k_ < 1) throw InputError("stabilizer_order must be >= 1");
    std::sort(components_.begin(), components_.end(),
              [](const auto& a, const auto& b) { return a.label() < b.label(); });
    for (std::size_t i = 1; i < components_.size(); ++i)
      if (components_[i].label() == components_[i - 1].label())
        throw InputError("duplicate component label '" + components_[i].label() + "'");
  }

  const std::string& name() const noexcept { return name_; }
  const std::vector<FixedComponent>& components() const noexcept { return components_; }
  int stabilizer_order() const noexcept { return k_; }

  /// Interior walls, sorted and deduplicated.
  std::vector<double> walls() const {
    std::set<double> w;
    for (const auto& f : components_)
      if (!f.central()) w.insert(f.mu().value());
    return {w.begin(), w.end()};
  }

  friend bool operator==(const QHSpace&, const QHSpace&) = default;

 private:
  std::string name_;
  std::vector<FixedComponent> components_;
  int k_;
};

struct DensityResult {
  double t = 0.0;
  double total = 0.0;
  std::map<std::string, double> per_component;
  double max_imag_residual = 0.0;
};

}  // namespace dhloc
