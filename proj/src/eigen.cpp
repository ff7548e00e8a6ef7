#include "ddelta/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ddelta {
namespace {

// sinh(y) - y without cancellation for small y.
double sinh_minus_identity(double y) {
  if (std::abs(y) > 0.5) return std::sinh(y) - y;
  const double y2 = y * y;
  double term = y * y2 / 6.0;
  double sum = term;
  for (int n = 2; n < 12; ++n) {
    term *= y2 / static_cast<double>((2 * n) * (2 * n + 1));
    sum += term;
  }
  return sum;
}

// Integral of (phi / phi(L))^2 over [0, 1].
double inner_norm(Parity p, double xi) {
  if (p == Parity::Even) {
    const double sech = 1.0 / std::cosh(xi);
    return (std::tanh(xi) + xi * sech * sech) / (2.0 * xi);
  }
  // (sinh xi cosh xi - xi) / (2 xi sinh^2 xi) = (sinh 2xi - 2xi) / (4 xi sinh^2 xi)
  if (xi > 20.0) {
    const double csch = 1.0 / std::sinh(xi);
    return (1.0 / std::tanh(xi) - xi * csch * csch) / (2.0 * xi);
  }
  const double sh = std::sinh(xi);
  return sinh_minus_identity(2.0 * xi) / (4.0 * xi * sh * sh);
}

// Shape of the inner piece relative to phi(L), its first and second derivative
// in s = |x|, written with decaying exponentials only.
double inner_ratio(Parity p, double xi, double s) {
  const double grow = std::exp(xi * (s - 1.0));
  if (p == Parity::Even) return grow * (1.0 + std::exp(-2.0 * xi * s)) / (1.0 + std::exp(-2.0 * xi));
  return grow * std::expm1(-2.0 * xi * s) / std::expm1(-2.0 * xi);
}

double inner_ratio_d1(Parity p, double xi, double s) {
  const double grow = std::exp(xi * (s - 1.0));
  if (p == Parity::Even) return xi * grow * -std::expm1(-2.0 * xi * s) / (1.0 + std::exp(-2.0 * xi));
  return xi * grow * (1.0 + std::exp(-2.0 * xi * s)) / -std::expm1(-2.0 * xi);
}

double outer_ratio(double xi, double s) { return std::exp(-xi * (s - 1.0)); }

}  // namespace

PiecewiseWaveFn::PiecewiseWaveFn(const BoundState& state) : PiecewiseWaveFn(state, true) {}

PiecewiseWaveFn PiecewiseWaveFn::off_shell(const BoundState& state) { return PiecewiseWaveFn(state, false); }

PiecewiseWaveFn::PiecewiseWaveFn(const BoundState& state, bool check) : state_(state) {
  if (!(state.xi > 0.0) || !std::isfinite(state.xi)) throw std::invalid_argument("bound state needs xi > 0");
  const double res = quantization_residual(state.parity, state.coupling.value(), state.xi);
  if (check && !(std::abs(res) <= kOnShellTolerance)) {
    throw std::invalid_argument("state is off shell: quantization residual " + std::to_string(res));
  }
  const double half = inner_norm(state.parity, state.xi) + 0.5 / state.xi;
  phi_l_ = 1.0 / std::sqrt(2.0 * half);
}

PiecewiseWaveFn build_wavefn(const BoundState& state) { return PiecewiseWaveFn(state); }

double PiecewiseWaveFn::amp() const noexcept {
  const double xi = state_.xi;
  if (state_.parity == Parity::Even) return phi_l_ / std::cosh(xi);
  return phi_l_ * xi / std::sinh(xi);
}

double PiecewiseWaveFn::operator()(double x) const noexcept {
  const double s = std::abs(x);
  const double shape = s <= 1.0 ? inner_ratio(state_.parity, state_.xi, s) : outer_ratio(state_.xi, s);
  const double v = phi_l_ * shape;
  return (state_.parity == Parity::Odd && x < 0.0) ? -v : v;
}

double PiecewiseWaveFn::derivative(double x) const noexcept {
  const double s = std::abs(x);
  const double d = s <= 1.0 ? inner_ratio_d1(state_.parity, state_.xi, s) : -state_.xi * outer_ratio(state_.xi, s);
  const double v = phi_l_ * d;
  // The derivative has the opposite parity of the function.
  return (state_.parity == Parity::Even && x < 0.0) ? -v : v;
}

double PiecewiseWaveFn::second_derivative(double x) const noexcept {
  return state_.xi * state_.xi * (*this)(x);
}

double PiecewiseWaveFn::inner_value_at_halfsep() const noexcept {
  return phi_l_ * inner_ratio(state_.parity, state_.xi, 1.0);
}

double PiecewiseWaveFn::outer_value_at_halfsep() const noexcept { return phi_l_ * outer_ratio(state_.xi, 1.0); }

double PiecewiseWaveFn::derivative_left_of_halfsep() const noexcept {
  return phi_l_ * inner_ratio_d1(state_.parity, state_.xi, 1.0);
}

double PiecewiseWaveFn::derivative_right_of_halfsep() const noexcept {
  return -state_.xi * phi_l_ * outer_ratio(state_.xi, 1.0);
}

double PiecewiseWaveFn::half_axis_norm() const noexcept {
  return phi_l_ * phi_l_ * (inner_norm(state_.parity, state_.xi) + 0.5 / state_.xi);
}

PiecewiseWaveFn PiecewiseWaveFn::scaled(double factor) const {
  PiecewiseWaveFn copy = *this;
  copy.phi_l_ *= factor;
  return copy;
}

double MatchReport::worst() const noexcept { return std::max({continuity_err, jump_err, c1_err, c2_err}); }

MatchReport match_report(const PiecewiseWaveFn& w) {
  MatchReport r;
  const double a = w.coupling();
  const double xi = w.xi();
  const double phi_l = w.value_at_halfsep();
  r.continuity_err = std::abs(w.outer_value_at_halfsep() - w.inner_value_at_halfsep());
  const double jump = w.derivative_right_of_halfsep() - w.derivative_left_of_halfsep();
  r.jump_err = std::abs(jump + phi_l / a);
  if (w.parity() == Parity::Even) {
    r.c1_err = std::abs(w.amp() - phi_l * std::exp(-xi) / (a * xi));
  } else {
    r.c2_err = std::abs(w.amp() - phi_l * std::exp(-xi) / a);
  }
  return r;
}

namespace {

std::vector<double> full_axis_breakpoints(double cutoff) { return {-cutoff, -1.0, 0.0, 1.0, cutoff}; }

}  // namespace

double norm_check(const PiecewiseWaveFn& w, const QuadratureSpec& quad) {
  const auto pts = full_axis_breakpoints(tail_cutoff(w.xi()));
  const QuadResult r = integrate([&w](double x) { const double v = w(x); return v * v; }, pts, quad);
  return std::abs(value_or_throw(r, "norm_check") - 1.0);
}

double overlap(const PiecewiseWaveFn& w1, const PiecewiseWaveFn& w2, const QuadratureSpec& quad) {
  const auto pts = full_axis_breakpoints(std::max(tail_cutoff(w1.xi()), tail_cutoff(w2.xi())));
  const QuadResult r = integrate([&](double x) { return w1(x) * w2(x); }, pts, quad);
  return value_or_throw(r, "overlap");
}

}  // namespace ddelta
