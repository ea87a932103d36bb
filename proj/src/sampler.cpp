#include "dapsp/sampler.hpp"

#include <cmath>
#include <string>

#include "dapsp/types.hpp"

namespace dapsp {

GeometricTable::GeometricTable(double p, std::size_t n_max) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(Errc::probability_out_of_range, "p=" + std::to_string(p));
  }
  omq_.resize(n_max + 2);
  omq_[0] = 0.0;
  const double lq = std::log1p(-p);  // -inf when p == 1
  for (std::size_t k = 1; k < omq_.size(); ++k) {
    omq_[k] = p == 1.0 ? 1.0 : -std::expm1(static_cast<double>(k) * lq);
  }
}

double GeometricTable::prob_first(std::size_t k) const {
  if (k == 0 || k >= omq_.size()) return 0.0;
  return omq_[k] - omq_[k - 1];
}

double GeometricTable::tail(std::size_t window) const {
  if (window >= omq_.size()) throw Error(Errc::out_of_range, "window " + std::to_string(window));
  return 1.0 - omq_[window];
}

double GeometricTable::window_mass(std::size_t i1, std::size_t i2) const {
  if (i1 == 0 || i2 < i1 || i2 >= omq_.size()) return 0.0;
  // (1-p)^(i1-1) * (1 - (1-p)^(i2-i1+1))
  return (1.0 - omq_[i1 - 1]) * omq_[i2 - i1 + 1];
}

void GeometricTable::check_window(std::size_t window) const {
  if (window + 1 >= omq_.size()) {
    throw Error(Errc::out_of_range, "window " + std::to_string(window) + " exceeds table");
  }
}

}  // namespace dapsp
