#ifndef DDELTA_QUADRATURE_HPP
#define DDELTA_QUADRATURE_HPP

// Adaptive Gauss-Kronrod (10/21) quadrature with global error control, plus
// the two semi-infinite building blocks the transforms need: a mapped rule
// for non-oscillatory tails and a half-period panel sum with Wynn epsilon
// extrapolation for Fourier-type tails g(k) sin/cos(w k).

#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddelta {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_depth = 48;           // bisection depth of any single panel
  int max_panels = 200000;      // cap on live panels across the whole integral
  double truncation_decades = 17.0;  // envelope drop at which a decaying tail is cut
  int max_tail_terms = 400;     // half-period panels summed before giving up
};

/// Reads DDELTA_QUAD_REL_TOL / DDELTA_QUAD_ABS_TOL when set.
QuadratureSpec quadrature_spec_from_env(QuadratureSpec base = {});

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  long evaluations = 0;
  bool converged = true;

  QuadResult& operator+=(const QuadResult& o) {
    value += o.value;
    abs_error += o.abs_error;
    evaluations += o.evaluations;
    converged = converged && o.converged;
    return *this;
  }
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what + " (error estimate " + std::to_string(estimate) + ")"), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

/// Throws QuadratureError when r did not converge.
double value_or_throw(const QuadResult& r, const char* what);

/// Single 21-point Kronrod panel with its embedded 10-point Gauss estimate.
struct Panel {
  double a = 0.0;
  double b = 0.0;
  double value = 0.0;
  double error = 0.0;
  int depth = 0;
  bool roundoff_limited = false;  // error already at the 50 eps |f| floor
};
Panel gauss_kronrod21(const Integrand& f, double a, double b, int depth = 0);

/// Integral over [points.front(), points.back()], starting from the panels
/// between consecutive breakpoints (kinks, half-periods) and bisecting the
/// worst panel until the global tolerance is met.
QuadResult integrate(const Integrand& f, std::span<const double> points, const QuadratureSpec& spec = {});
QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec = {});

/// Integral over [a, inf) of a non-oscillatory integrand through k = a + t / (1 - t).
QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec = {});

enum class Trig { Sin, Cos };

inline double trig(Trig t, double arg) { return t == Trig::Sin ? std::sin(arg) : std::cos(arg); }

/// Integral over [a, inf) of g(k) trig(omega k) for g that decays
/// monotonically (at least algebraically) for large k. Panels end on the
/// zeros of trig(omega k); the alternating partial sums are accelerated with
/// the epsilon algorithm. omega == 0 falls back to integrate_to_infinity.
QuadResult integrate_fourier(const Integrand& g, Trig kind, double omega, double a, const QuadratureSpec& spec = {});

/// Wynn epsilon extrapolation of a sequence of partial sums; returns the
/// last diagonal estimate together with the difference from the previous one.
struct Extrapolation {
  double value = 0.0;
  double change = 0.0;
};
Extrapolation wynn_epsilon(std::span<const double> partial_sums);

}  // namespace ddelta

#endif  // DDELTA_QUADRATURE_HPP
