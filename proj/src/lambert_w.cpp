#include "ddelta/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ddelta {
namespace {

constexpr double kBranchPoint = -1.0 / std::numbers::e;
constexpr int kMaxIter = 64;

double halley(double z, double w) {
  for (int i = 0; i < kMaxIter; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

// Newton on w + log|w| = log|z|, for |w| large where exp(w) over/underflows.
double log_newton(double z, double w) {
  const double lz = std::log(std::abs(z));
  for (int i = 0; i < kMaxIter; ++i) {
    const double g = w + std::log(std::abs(w)) - lz;
    const double step = g / (1.0 + 1.0 / w);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(w)) break;
  }
  return w;
}

double branch_offset(double z) {
  // p = sqrt(2 (e z + 1)), the natural expansion variable at z = -1/e.
  return std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * z + 1.0)));
}

}  // namespace

double lambert_w0(double z) {
  if (std::isnan(z) || z < kBranchPoint * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw std::domain_error("W0 undefined below -1/e");
  }
  if (z == 0.0) return 0.0;
  if (z < -0.25) {
    const double p = branch_offset(z);
    return halley(z, -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p);
  }
  if (z < 3.0) return halley(z, std::log1p(z));
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  const double guess = l1 - l2 + l2 / l1;
  return guess > 30.0 ? log_newton(z, guess) : halley(z, guess);
}

double lambert_wm1(double z) {
  if (std::isnan(z) || z >= 0.0 || z < kBranchPoint * (1.0 + 4.0 * std::numeric_limits<double>::epsilon())) {
    throw std::domain_error("W-1 defined only on [-1/e, 0)");
  }
  if (z < -0.25) {
    const double p = branch_offset(z);
    return halley(z, -1.0 - p - p * p / 3.0 - 11.0 / 72.0 * p * p * p);
  }
  const double l1 = std::log(-z);
  const double l2 = std::log(-l1);
  const double guess = l1 - l2 + l2 / l1;
  return guess < -30.0 ? log_newton(z, guess) : halley(z, guess);
}

double even_root_closed_form(double a) {
  if (!(a > 0.0)) throw std::domain_error("even root requires a > 0");
  return 0.5 * (1.0 / a + lambert_w0(std::exp(-1.0 / a) / a));
}

std::optional<double> odd_root_closed_form(double a) {
  if (!(a > 0.0)) throw std::domain_error("odd root requires a > 0");
  if (a >= 1.0) return std::nullopt;
  // Both real branches solve w e^w = z; for a < 1 the trivial solution
  // w = -1/a < -1 lies on W-1, so the physical root comes from W0. Rounding
  // can push z a hair below -1/e right at threshold.
  const double z = std::max(-std::exp(-1.0 / a) / a, kBranchPoint);
  const double w = lambert_w0(z);
  return 0.5 * (1.0 / a + w);
}

}  // namespace ddelta
