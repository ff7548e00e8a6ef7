#ifndef DDELTA_EIGEN_HPP
#define DDELTA_EIGEN_HPP

// Closed-form bound-state eigenfunctions of the double-delta well, extended
// from the half axis with definite parity. Lengths are in units of L.
//
//   even:  phi(x) = A cosh(xi x)                          |x| <= 1
//                   A cosh(xi) exp(-xi (|x| - 1))         |x| >= 1
//   odd:   phi(x) = (A / xi) sinh(xi x)                   |x| <= 1
//                   sgn(x) (A / xi) sinh(xi) exp(-xi (|x| - 1))
//
// A is phi(0) for the even state and phi'(0) for the odd one, fixed here by
// unit norm over the whole axis. Internally everything is carried relative
// to phi(L), which stays O(1) even when cosh(xi) would overflow.

#include "ddelta/model.hpp"
#include "ddelta/quadrature.hpp"

namespace ddelta {

class PiecewiseWaveFn {
 public:
  /// Throws std::invalid_argument when the state is off shell
  /// (|quantization residual| > kOnShellTolerance).
  explicit PiecewiseWaveFn(const BoundState& state);

  static constexpr double kOnShellTolerance = 1e-10;

  /// Builds the closed forms for any xi > 0 without the on-shell check, so
  /// match_report can be shown to flag a wrong xi.
  static PiecewiseWaveFn off_shell(const BoundState& state);

  const BoundState& state() const noexcept { return state_; }
  Parity parity() const noexcept { return state_.parity; }
  double xi() const noexcept { return state_.xi; }
  double coupling() const noexcept { return state_.coupling.value(); }

  /// Free constant A (phi(0) for even, phi'(0) for odd).
  double amp() const noexcept;
  /// phi(L).
  double value_at_halfsep() const noexcept { return phi_l_; }

  double operator()(double x) const noexcept;
  /// Analytic derivative away from x = +-1; at |x| = 1 returns the inner one.
  double derivative(double x) const noexcept;
  double second_derivative(double x) const noexcept;

  /// Values of the inner (|x| <= 1) and outer (|x| >= 1) formulas at x = +1.
  double inner_value_at_halfsep() const noexcept;
  double outer_value_at_halfsep() const noexcept;
  /// One-sided derivatives at x = +1.
  double derivative_left_of_halfsep() const noexcept;
  double derivative_right_of_halfsep() const noexcept;

  /// Closed-form integral of phi^2 over [0, inf); 1/2 for a normalized state.
  double half_axis_norm() const noexcept;

  /// Copy with the overall amplitude multiplied by factor (negative controls).
  PiecewiseWaveFn scaled(double factor) const;

 private:
  PiecewiseWaveFn(const BoundState& state, bool check);

  BoundState state_;
  double phi_l_ = 0.0;
};

PiecewiseWaveFn build_wavefn(const BoundState& state);

inline double evaluate(const PiecewiseWaveFn& w, double x) { return w(x); }

struct MatchReport {
  double continuity_err = 0.0;  // |phi(L+) - phi(L-)|
  double jump_err = 0.0;        // |[phi'] at L + phi(L) / a|
  double c1_err = 0.0;          // even: |phi(0) - phi(L) e^-xi / (a xi)|
  double c2_err = 0.0;          // odd:  |phi'(0) - phi(L) e^-xi / a|

  double worst() const noexcept;
};

MatchReport match_report(const PiecewiseWaveFn& w);

/// |integral of phi^2 over the real axis - 1| by adaptive quadrature.
/// Throws QuadratureError on non-convergence.
double norm_check(const PiecewiseWaveFn& w, const QuadratureSpec& quad = {});

/// Quadrature of phi_a phi_b over the real axis.
double overlap(const PiecewiseWaveFn& w1, const PiecewiseWaveFn& w2, const QuadratureSpec& quad = {});

/// Point past which exp(-xi (x - 1)) < exp(-40).
inline double tail_cutoff(double xi) { return 1.0 + 40.0 / xi; }

}  // namespace ddelta

#endif  // DDELTA_EIGEN_HPP
