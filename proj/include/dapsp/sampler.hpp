#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

namespace dapsp {

using Rng = std::mt19937_64;

// Draws the first success of a run of independent Bernoulli(p) trials by
// bisecting over windows of the geometric law, so a subset of n slots costs
// O((np + 1) log n) instead of n coin flips.
class GeometricTable {
 public:
  GeometricTable(double p, std::size_t n_max);

  double p() const noexcept { return p_; }
  std::size_t n_max() const noexcept { return omq_.size() - 1; }

  // Pr[first success at trial k] = (1-p)^(k-1) p, k >= 1
  double prob_first(std::size_t k) const;
  // Pr[no success in the first `window` trials] = (1-p)^window
  double tail(std::size_t window) const;
  // Pr[first success in trials i1..i2]
  double window_mass(std::size_t i1, std::size_t i2) const;

  // 1-based index of the first success within `window` trials, or nullopt.
  template <class Gen>
  std::optional<std::size_t> sample_first_index(std::size_t window, Gen& rng) const;

  // Sorted 0-based indices of the successes among n trials.
  template <class Gen>
  std::vector<std::size_t> sample_subset(std::size_t n, Gen& rng) const;

 private:
  void check_window(std::size_t window) const;

  double p_;
  // omq_[k] = 1 - (1-p)^k
  std::vector<double> omq_;
};

template <class Gen>
std::optional<std::size_t> GeometricTable::sample_first_index(std::size_t window, Gen& rng) const {
  check_window(window);
  if (window == 0) return std::nullopt;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  // Slot window+1 stands for "no success". Conditioned on the outcome being at
  // least i1, the law restarted at i1 is the same geometric law, so only the
  // relative offsets matter.
  std::size_t i1 = 1, i2 = window + 1;
  while (i1 < i2) {
    const std::size_t j = (i1 + i2) / 2;
    const double left = omq_[j - i1 + 1];
    const double total = i2 == window + 1 ? 1.0 : omq_[i2 - i1 + 1];
    if (unif(rng) * total < left) {
      i2 = j;
    } else {
      i1 = j + 1;
    }
  }
  if (i1 == window + 1) return std::nullopt;
  return i1;
}

template <class Gen>
std::vector<std::size_t> GeometricTable::sample_subset(std::size_t n, Gen& rng) const {
  std::vector<std::size_t> out;
  if (p_ == 1.0) {
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = i;
    return out;
  }
  std::size_t pos = 0;
  while (pos < n) {
    const auto k = sample_first_index(n - pos, rng);
    if (!k) break;
    pos += *k;
    out.push_back(pos - 1);
  }
  return out;
}

}  // namespace dapsp
