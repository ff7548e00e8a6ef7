#ifndef DDELTA_TRANSFORM_HPP
#define DDELTA_TRANSFORM_HPP

// Fourier sine and cosine transforms on the half line,
//
//     F_S{f}(k) = sqrt(2/pi) int_0^inf f(x) sin(kx) dx
//     F_C{f}(k) = sqrt(2/pi) int_0^inf f(x) cos(kx) dx,
//
// both their own inverse. A bound state of the double-delta well turns the
// Schrodinger equation into an algebraic one for its transform; solving it
// gives (in units of L)
//
//     Phi(k) = sqrt(2/pi) phi(L)/a * trig(k) / (k^2 + xi^2)
//
// with trig = sin for odd states and cos for even states. The four table
// integrals below are what inverting that expression needs; the two with
// k^2 - d^2 are principal values and describe the E > 0 case.

#include <string>
#include <string_view>
#include <vector>

#include "ddelta/eigen.hpp"
#include "ddelta/quadrature.hpp"

namespace ddelta {

enum class TransformKind { Sine, Cosine };

std::string_view to_string(TransformKind k) noexcept;

/// Sine for odd states, cosine for even ones.
TransformKind transform_kind_for(Parity p) noexcept;

inline Trig trig_of(TransformKind k) noexcept { return k == TransformKind::Sine ? Trig::Sin : Trig::Cos; }

struct AnalyticTransform {
  TransformKind kind = TransformKind::Cosine;
  double prefactor = 0.0;  // sqrt(2/pi) phi(L) / a
  double xi = 0.0;
  double halfsep = 1.0;

  double operator()(double k) const noexcept;
};

AnalyticTransform analytic_transform(const PiecewiseWaveFn& w);

/// A function on [0, inf) together with its kinks and the point past which
/// it is negligible. cutoff <= 0 asks the transform to locate it by doubling
/// until the envelope has dropped below the quadrature's abs_tol.
struct HalfLineFunction {
  Integrand f;
  std::vector<double> breakpoints;
  double cutoff = 0.0;
};

HalfLineFunction half_line(const PiecewiseWaveFn& w);

/// Preconditions: f decays exponentially or has compact support; k >= 0.
/// Throws QuadratureError on non-convergence.
double sine_transform(const HalfLineFunction& f, double k, const QuadratureSpec& q = {});
double cosine_transform(const HalfLineFunction& f, double k, const QuadratureSpec& q = {});
double fourier_transform(TransformKind kind, const HalfLineFunction& f, double k, const QuadratureSpec& q = {});

/// Numerical inverse of the analytic transform at x > 0.
double inverse_reconstruct(const AnalyticTransform& t, double x, const QuadratureSpec& q = {});

/// int_0^inf |Phi(k)|^2 dk by quadrature.
double transform_norm(const AnalyticTransform& t, const QuadratureSpec& q = {});

/// Relative mismatch between the closed-form half-axis norm of w and the
/// quadrature norm of t.
double parseval_residual(const PiecewiseWaveFn& w, const AnalyticTransform& t, const QuadratureSpec& q = {});

// ---- Table integrals ------------------------------------------------------

enum class TableIntegral { A1, A2, A3, A4 };

std::string_view to_string(TableIntegral t) noexcept;

/// int_0^inf dk trig(kc) trig(kx) / (k^2 +- d^2):
///   A1: sin sin / (k^2 + d^2)     A2: cos cos / (k^2 + d^2)
///   A3: sin sin / (k^2 - d^2)     A4: cos cos / (k^2 - d^2)   (principal value)
struct TabulatedCase {
  TableIntegral which = TableIntegral::A1;
  double c = 1.0;
  double d = 1.0;
  double x = 0.5;
};

enum class Branch { Below, Above };  // x < c, x > c

/// Closed-form table value; x == c takes the Below branch.
double tabulated_closed_form(const TabulatedCase& tc);
double tabulated_closed_form(const TabulatedCase& tc, Branch b);

enum class PvMethod { SymmetricExcision, SingularitySubtraction };

/// PV int_0^inf cos(omega k) / (k^2 - d^2) dk.
double pv_cosine_integral(double omega, double d, PvMethod method, const QuadratureSpec& q = {});

struct TabulatedValue {
  double numeric = 0.0;
  double closed_form = 0.0;
  double alternate = 0.0;  // A3/A4: symmetric-excision PV; A1/A2: equal to numeric
};

/// Throws std::invalid_argument for c, d or x not positive.
TabulatedValue tabulated_integral(const TabulatedCase& tc, const QuadratureSpec& q = {});

// ---- E > 0 -------------------------------------------------------------------

struct NonexistenceSpec {
  double first_window = 2.0;  // windows [X, 2X], X = first_window * 2^j
  int doublings = 4;
  int min_samples = 24;
  double samples_per_period = 8.0;
  QuadratureSpec quad{};
};

/// For a real kappa the transformed equation has a pole on the real k axis;
/// its principal-value inverse is a standing wave that never decays, so no
/// normalizable state exists. The diagnostic records the windowed amplitude
/// of that reconstruction for both parities, the pointwise mismatch against
/// the A3/A4 closed forms, and, for a > 0, the windowed amplitude of the
/// even bound state's reconstruction as a decaying contrast.
struct NonexistenceDiagnostic {
  double a = 0.0;
  double kappa = 0.0;
  std::vector<double> window_starts;
  std::vector<double> cosine_amplitude;  // even candidate
  std::vector<double> sine_amplitude;    // odd candidate
  double max_pointwise_error = 0.0;
  double bound_xi = 0.0;                 // 0 when a <= 0
  std::vector<double> bound_amplitude;

  /// Smallest ratio amplitude[j + 1] / amplitude[j] over both parities.
  double min_window_ratio() const;
};

NonexistenceDiagnostic positive_energy_nonexistence(Coupling a, double kappa, const NonexistenceSpec& spec = {});

/// PV reconstruction at x of the transform sqrt(2/pi) phi(L)/a trig(k) / (k^2 - kappa^2), phi(L) = 1.
double pv_reconstruct(TransformKind kind, double a, double kappa, double x, PvMethod method,
                      const QuadratureSpec& q = {});
/// The same quantity from the A3/A4 closed forms.
double pv_reconstruct_closed_form(TransformKind kind, double a, double kappa, double x);

// ---- Differentiation identities -------------------------------------------

/// Smooth test functions with Gaussian tails and their first two derivatives.
struct CorpusFunction {
  std::string name;
  Integrand f;
  Integrand d1;
  Integrand d2;
};

inline constexpr int kDifferentiationCorpusVersion = 1;

std::vector<CorpusFunction> differentiation_corpus();

/// |F{f''}(k) - (-k^2 F{f}(k) + boundary term)| with the boundary term
/// sqrt(2/pi) k f(0) for sine and -sqrt(2/pi) f'(0) for cosine.
double differentiation_residual(const CorpusFunction& fn, TransformKind kind, double k, const QuadratureSpec& q = {});

}  // namespace ddelta

#endif  // DDELTA_TRANSFORM_HPP
