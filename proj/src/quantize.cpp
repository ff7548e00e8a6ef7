#include "ddelta/quantize.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ddelta {
namespace {

double slope(Parity p, double a, double xi) {
  const double e = 2.0 * std::exp(-2.0 * xi);
  return p == Parity::Even ? 2.0 * a + e : 2.0 * a - e;
}

// Bisection on a bracket with f(lo) < 0 < f(hi), run down to adjacent doubles,
// followed by a guarded Newton step.
double bisect(Parity p, double a, RootBracket br, const SolverSpec& spec) {
  if (!(spec.abs_tol > 0.0) || spec.max_iter < 1) throw std::invalid_argument("invalid SolverSpec");
  double lo = br.lo;
  double hi = br.hi;
  for (int it = 0; it < spec.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (quantization_residual(p, a, mid) < 0.0) lo = mid;
    else hi = mid;
  }
  double x = std::abs(quantization_residual(p, a, lo)) < std::abs(quantization_residual(p, a, hi)) ? lo : hi;
  const double fx = quantization_residual(p, a, x);
  const double polished = x - fx / slope(p, a, x);
  if (polished >= br.lo && polished <= br.hi &&
      std::abs(quantization_residual(p, a, polished)) < std::abs(fx)) {
    x = polished;
  }
  const double res = std::abs(quantization_residual(p, a, x));
  if (!(res <= spec.abs_tol)) {
    throw std::runtime_error("quantization root did not reach tolerance (residual " + std::to_string(res) + ")");
  }
  return x;
}

void require_attractive(double a) {
  if (!(a > 0.0)) throw std::domain_error("no bound states for a repulsive coupling (a <= 0)");
}

}  // namespace

RootBracket even_bracket(double a) {
  require_attractive(a);
  return {kBracketFloor, 1.0 / a + 1.0};
}

std::optional<RootBracket> odd_bracket(double a) {
  require_attractive(a);
  if (a >= 1.0) return std::nullopt;
  // f_odd(xi) < 2 xi (a - 1) + 2 xi^2 < 0 for xi < 1 - a, so the floor is
  // pulled in when a sits just below threshold.
  const double lo = std::min(kBracketFloor, 0.5 * (1.0 - a));
  // The root sits below 1 / (2a); the extra unit keeps f(hi) clearly positive
  // when 2a * (1 / (2a)) rounds below one.
  const double hi = 0.5 / a + 1.0;
  if (!(quantization_residual(Parity::Odd, a, lo) < 0.0) || !(quantization_residual(Parity::Odd, a, hi) > 0.0)) {
    return std::nullopt;
  }
  return RootBracket{lo, hi};
}

double solve_even(Coupling a, const SolverSpec& spec) {
  return bisect(Parity::Even, a.value(), even_bracket(a.value()), spec);
}

std::optional<double> solve_odd(Coupling a, const SolverSpec& spec) {
  const auto br = odd_bracket(a.value());
  if (!br) return std::nullopt;
  return bisect(Parity::Odd, a.value(), *br, spec);
}

Spectrum spectrum(Coupling a, EnergyScale scale, const SolverSpec& spec) {
  Spectrum s;
  s.a = a.value();
  if (!a.attractive()) return s;
  const double xe = solve_even(a, spec);
  s.states.push_back({Parity::Even, xe, a, energy_from_xi(xe, scale)});
  if (const auto xo = solve_odd(a, spec)) {
    s.states.push_back({Parity::Odd, *xo, a, energy_from_xi(*xo, scale)});
  }
  return s;
}

LevelSplitting level_splitting(Coupling a, const SolverSpec& spec) {
  const double xe = solve_even(a, spec);
  const auto xo = solve_odd(a, spec);
  if (!xo) throw std::domain_error("level splitting needs both states (0 < a < 1)");
  LevelSplitting out;
  out.gap = (std::exp(-2.0 * xe) + std::exp(-2.0 * *xo)) / (2.0 * a.value());
  out.log_gap = -2.0 * *xo + std::log1p(std::exp(-2.0 * (xe - *xo))) - std::log(2.0 * a.value());
  return out;
}

CurveTable quantization_curves(double xi_max, int n, const std::vector<double>& a_values) {
  if (!(xi_max > 0.0) || !std::isfinite(xi_max)) throw std::invalid_argument("xi_max must be positive");
  if (n < 2) throw std::invalid_argument("need at least two samples");
  CurveTable t;
  t.a_values = a_values;
  t.lines.assign(a_values.size(), {});
  for (int i = 0; i < n; ++i) {
    const double xi = xi_max * static_cast<double>(i) / static_cast<double>(n - 1);
    const double e = std::exp(-2.0 * xi);
    t.xi.push_back(xi);
    t.even_rhs.push_back(1.0 + e);
    t.odd_rhs.push_back(-std::expm1(-2.0 * xi));
    for (std::size_t j = 0; j < a_values.size(); ++j) t.lines[j].push_back(2.0 * a_values[j] * xi);
  }
  return t;
}

}  // namespace ddelta
