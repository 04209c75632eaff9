#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "error.hpp"

namespace dhloc {

/// Result of polynomial (Richardson) extrapolation to h = 0.
template <typename T>
struct Extrapolation {
  T value{};     // using all samples
  T previous{};  // using all but the last sample; equals value for one sample
};

/// Neville's scheme evaluated at h = 0 for samples (h_i, v_i). Samples should
/// be ordered with h decreasing toward 0.
template <typename T>
Extrapolation<T> richardson_to_zero(std::span<const double> h, std::span<const T> v) {
  if (h.size() != v.size() || h.empty())
    throw InputError("richardson_to_zero: need matching nonempty samples");
  const std::size_t n = h.size();
  std::vector<T> p(v.begin(), v.end());
  T prev = p[0];
  for (std::size_t m = 1; m < n; ++m) {
    // after this pass p[i] interpolates samples i..i+m
    for (std::size_t i = 0; i + m < n; ++i) {
      const double hi = h[i], hj = h[i + m];
      p[i] = (hi * p[i + 1] - hj * p[i]) / (hi - hj);
    }
    if (m == n - 2) prev = p[0];
  }
  return {p[0], prev};
}

}  // namespace dhloc
