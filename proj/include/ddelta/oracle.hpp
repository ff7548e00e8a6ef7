#ifndef DDELTA_ORACLE_HPP
#define DDELTA_ORACLE_HPP

// Independent numerical backends for the double-delta spectrum.
//
//  * A finite double square well (width theta, depth v0, centred on +-L),
//    solved exactly by 2x2 transfer matrices on the half axis. Squeezing
//    theta -> 0 at fixed alpha = theta v0 recovers the delta wells.
//  * A three-point finite-difference Hamiltonian on a Dirichlet box with
//    each delta spread over a few grid cells.
//
// Units are canonical: hbar = 2m = 1, so H = -d^2/dx^2 + V and a delta of
// strength alpha corresponds to a = 1 / (alpha L).

#include <optional>
#include <vector>

#include "ddelta/model.hpp"

namespace ddelta {

struct WellConfig {
  double theta = 0.1;    // width of each well
  double v0 = 10.0;      // depth; v0 < 0 makes the pair barriers
  double halfsep = 1.0;  // centre of each well

  double alpha() const noexcept { return theta * v0; }
};

/// Throws std::invalid_argument unless 0 < theta < 2 L and all fields are finite.
void validate(const WellConfig& cfg);

/// Well pair with the same alpha as the delta coupling a (L = 1).
WellConfig well_for_coupling(Coupling a, double theta);

struct WellScan {
  int points = 200;           // uniform energy samples on (-v0, 0)
  double energy_tol = 1e-13;  // relative bisection width
};

struct WellLevel {
  Parity parity = Parity::Even;
  double energy = 0.0;
  double bracket_lo = 0.0;  // energies bounding the root
  double bracket_hi = 0.0;
  double det_lo = 0.0;  // matching determinant at the bracket ends (opposite signs)
  double det_hi = 0.0;
  double residual = 0.0;  // |determinant| at the returned energy
};

/// phi' + q phi at the outer edge of the well, q = sqrt(-E), for a half-axis
/// solution started with phi'(0) = 0 (even) or phi(0) = 0 (odd). Zero exactly
/// when the solution continues as a decaying exponential.
double matching_determinant(const WellConfig& cfg, Parity p, double energy);

/// All bound levels with -v0 < E < 0, sorted by energy.
std::vector<WellLevel> square_well_spectrum(const WellConfig& cfg, const WellScan& scan = {});

struct LimitRow {
  double theta = 0.0;
  double v0 = 0.0;
  std::optional<double> well_even, well_odd;
  std::optional<double> delta_even, delta_odd;

  std::optional<double> gap(Parity p) const;
};

struct LimitStudy {
  double alpha = 0.0;
  double halfsep = 1.0;
  std::vector<LimitRow> rows;

  /// Gaps shrink monotonically (each at most 5% above its predecessor) and
  /// the last is below a quarter of the first. False if the parity is
  /// missing from any row.
  bool converging(Parity p) const;
};

/// Throws std::invalid_argument unless thetas is strictly decreasing with
/// every theta in (0, 2L).
LimitStudy delta_limit_study(double alpha, double halfsep, const std::vector<double>& thetas,
                             const WellScan& scan = {});

// Defaults are the reference resolution: the smearing error is first order
// in delta_width and stays below 1e-3 in E for a >= 1/4.
struct GridSpec {
  double x_max = 20.0;
  int n = 800001;             // grid points including the two Dirichlet ends
  double delta_width = 1e-4;  // each delta becomes a well this wide

  double spacing() const noexcept { return 2.0 * x_max / (n - 1); }
};

void validate(const GridSpec& g);

struct GridLevel {
  Parity parity = Parity::Even;
  double energy = 0.0;
};

/// Negative eigenvalues of the finite-difference Hamiltonian, located by
/// Sturm-sequence bisection and classified by the parity of the eigenvector
/// from inverse iteration. Throws std::runtime_error when inverse iteration
/// fails to converge.
std::vector<GridLevel> grid_eigensolve(Coupling a, const GridSpec& g);

/// Number of eigenvalues of the grid Hamiltonian below lambda.
int grid_eigenvalue_count_below(Coupling a, const GridSpec& g, double lambda);

}  // namespace ddelta

#endif  // DDELTA_ORACLE_HPP
