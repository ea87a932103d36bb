#include "dapsp/scales.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <string>

namespace dapsp {

namespace mp = boost::multiprecision;

const char* to_string(Variant v) noexcept {
  switch (v) {
    case Variant::exact: return "exact";
    case Variant::approx_det: return "approx_det";
    case Variant::approx_rand: return "approx_rand";
  }
  return "unknown";
}

namespace {

constexpr Distance kSaturated = kInfinity - 1;

Distance clamp_big(const mp::cpp_int& x) {
  if (x >= kSaturated) return kSaturated;
  if (x < 0) return 0;
  return x.convert_to<Distance>();
}

mp::cpp_int ceil_div(const mp::cpp_int& a, const mp::cpp_int& b) { return (a + b - 1) / b; }

// d = a / b
SeparatorWindows windows_for_ratio(const mp::cpp_int& a, const mp::cpp_int& b) {
  SeparatorWindows w;
  w.trigger = clamp_big(ceil_div(32 * a, 33 * b));
  w.s_lo = clamp_big((2 * a) / (3 * b));
  w.s_hi = clamp_big((23 * a) / (33 * b));
  w.v_hi = clamp_big(ceil_div(a, 33 * b) - 1);
  w.floor_d = clamp_big(a / b);
  w.part2_hi = clamp_big((34 * a) / (33 * b));
  return w;
}

}  // namespace

SeparatorWindows windows_for_integer(Distance d) { return windows_for_ratio(d, 1); }

Distance log_cutoff(std::size_t n, double factor) {
  const double v = std::ceil(factor * std::log2(static_cast<double>(n)) - 1e-9);
  return v < 1 ? 1 : static_cast<Distance>(std::min<double>(v, kSaturated));
}

ScaleLadder ScaleLadder::build(std::size_t n, double eps, Variant variant) {
  if (n < 2) throw Error(Errc::bad_params, "ladder needs n >= 2");
  if (variant != Variant::exact && !(eps > 0 && eps <= 1.0 / 3.0 + 1e-12)) {
    throw Error(Errc::epsilon_out_of_range, "eps=" + std::to_string(eps));
  }
  ScaleLadder L;
  L.variant_ = variant;
  L.n_ = n;
  L.eps_ = eps;
  if (variant == Variant::approx_rand) {
    L.num_ = 67;
    L.den_ = 66;
  }

  // i_max = largest i with num^i <= n * den^i
  {
    mp::cpp_int a = 1, b = 1;
    std::size_t i = 0;
    while (true) {
      mp::cpp_int a2 = a * L.num_, b2 = b * L.den_;
      if (a2 > b2 * n) break;
      a = a2;
      b = b2;
      ++i;
    }
    L.i_max_ = i;
  }

  const long double ln_rho = std::log(static_cast<long double>(L.num_) / L.den_);
  if (variant == Variant::exact) {
    L.c_ = 1;
  } else {
    long double target = std::log1p(static_cast<long double>(eps)) / L.i_max_;
    if (variant == Variant::approx_rand) target /= 2;
    const long double ratio = ln_rho / std::log1p(target);
    L.c_ = static_cast<std::size_t>(std::ceil(ratio - 1e-12L));
    if (L.c_ < 1) L.c_ = 1;
    if (variant == Variant::approx_rand) {
      const long double cap = std::log(34.0L / 33.0L);
      while (ln_rho * (L.c_ + 1) / L.c_ > cap) ++L.c_;
    }
  }
  L.eps_prime_ = std::expm1(ln_rho / L.c_);

  const std::size_t c = L.c_;
  const std::size_t max_k = (L.i_max_ + 2) * (c + 2) + c + 2;
  L.floors_.assign(max_k + 1, 0);

  // multiples of c: exact rational floors
  mp::cpp_int a = 1, b = 1;
  for (std::size_t i = 0; i * c <= max_k; ++i) {
    L.floors_[i * c] = clamp_big(a / b);
    L.windows_.push_back(windows_for_ratio(a, b));
    a *= L.num_;
    b *= L.den_;
  }

  // everything else: long double, confirmed exactly when close to an integer
  for (std::size_t k = 0; k <= max_k; ++k) {
    if (k % c == 0) continue;
    const long double x = std::exp(ln_rho * k / c);
    if (x >= kSaturated) {
      L.floors_[k] = kSaturated;
      continue;
    }
    const long double q = std::round(x);
    if (std::fabs(x - q) > 1e-9L * x) {
      L.floors_[k] = static_cast<Distance>(std::floor(x));
      continue;
    }
    // floor is q or q-1: q <= rho^(k/c)  <=>  q^c * den^k <= num^k
    const mp::cpp_int qq = static_cast<unsigned long long>(q);
    const mp::cpp_int lhs = mp::pow(qq, static_cast<unsigned>(c)) *
                            mp::pow(mp::cpp_int(L.den_), static_cast<unsigned>(k));
    const mp::cpp_int rhs = mp::pow(mp::cpp_int(L.num_), static_cast<unsigned>(k));
    L.floors_[k] = static_cast<Distance>(lhs <= rhs ? q : q - 1);
  }
  return L;
}

Distance ScaleLadder::threshold(std::size_t k) const {
  if (k >= floors_.size()) {
    throw Error(Errc::out_of_range, "threshold index " + std::to_string(k));
  }
  return floors_[k];
}

std::size_t ScaleLadder::level_of(Distance dist) const {
  // smallest i with dist <= floor(D_{i+1})
  std::size_t i = 0;
  while ((i + 1) * c_ < floors_.size() && floors_[(i + 1) * c_] < dist) ++i;
  return i;
}

const SeparatorWindows& ScaleLadder::windows(std::size_t i) const {
  if (i >= windows_.size()) throw Error(Errc::out_of_range, "level " + std::to_string(i));
  return windows_[i];
}

Distance ScaleLadder::radius(std::size_t i) const {
  const long double ln_rho = std::log(static_cast<long double>(num_) / den_);
  const long double r = eps_prime_ * std::exp(ln_rho * i) * (1 - 1e-15L);
  return static_cast<Distance>(std::floor(r));
}

}  // namespace dapsp
