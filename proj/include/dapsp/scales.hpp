#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dapsp/types.hpp"

namespace dapsp {

enum class Variant { exact, approx_det, approx_rand };

const char* to_string(Variant v) noexcept;

// Integer bounds a separator works with for a (possibly fractional) scale d.
//   trigger: a vertex is handed to the separator once its estimate is >= trigger
//   s-search window: layers k with s_lo < k <= s_hi
//   v-search window: layers k with 0 <= k <= v_hi
struct SeparatorWindows {
  Distance trigger = 0;
  Distance s_lo = 0;
  Distance s_hi = 0;
  Distance v_hi = 0;
  Distance floor_d = 0;        // floor(d)
  Distance part2_hi = 0;       // floor(34d/33)

  friend bool operator==(const SeparatorWindows&, const SeparatorWindows&) = default;
};

// Windows for an integer scale d.
SeparatorWindows windows_for_integer(Distance d);

// Distance-scale ladder D_i = rho^i with rho = 34/33 (deterministic) or 67/66
// (randomized), refined into c sub-steps of (1+eps')^c = rho. All thresholds are
// exact floors of rho^(k/c).
class ScaleLadder {
 public:
  static ScaleLadder build(std::size_t n, double eps, Variant variant);

  Variant variant() const noexcept { return variant_; }
  std::size_t n() const noexcept { return n_; }
  std::uint32_t rho_num() const noexcept { return num_; }
  std::uint32_t rho_den() const noexcept { return den_; }
  std::size_t i_max() const noexcept { return i_max_; }
  std::size_t c() const noexcept { return c_; }
  long double eps_prime() const noexcept { return eps_prime_; }
  double eps() const noexcept { return eps_; }

  // floor(rho^(k/c)), saturated at kInfinity - 1.
  Distance threshold(std::size_t k) const;
  std::size_t max_k() const noexcept { return floors_.size() - 1; }

  // floor(D_i)
  Distance floor_d(std::size_t i) const { return threshold(i * c_); }

  // i with dist in (floor(D_i), floor(D_{i+1})], distances in [1, floor(D_1)] map to 0.
  std::size_t level_of(Distance dist) const;

  const SeparatorWindows& windows(std::size_t i) const;

  // floor(eps' * D_i)
  Distance radius(std::size_t i) const;

 private:
  Variant variant_ = Variant::exact;
  std::size_t n_ = 0;
  double eps_ = 0;
  std::uint32_t num_ = 34, den_ = 33;
  std::size_t i_max_ = 0;
  std::size_t c_ = 1;
  long double eps_prime_ = 0;
  std::vector<Distance> floors_;
  std::vector<SeparatorWindows> windows_;
};

// ceil(factor * lg n), at least 1.
Distance log_cutoff(std::size_t n, double factor);

}  // namespace dapsp
