#ifndef DDELTA_QUANTIZE_HPP
#define DDELTA_QUANTIZE_HPP

// Bound-state quantization for the double-delta well. In canonical units the
// allowed decay constants are the positive roots of
//
//     even:  2 a xi = 1 + exp(-2 xi)
//     odd:   2 a xi = 1 - exp(-2 xi)
//
// The even branch always has exactly one root for a > 0; the odd branch has a
// root only for 0 < a < 1. At a = 1 the line 2 a xi touches 1 - exp(-2 xi)
// at the origin without crossing, which is classified as "no odd state".

#include <optional>
#include <vector>

#include "ddelta/model.hpp"

namespace ddelta {

struct SolverSpec {
  double abs_tol = 1e-12;  // residual target for |f(xi)|
  int max_iter = 200;
};

/// Lower end of the root brackets; excludes the trivial odd root xi = 0.
inline constexpr double kBracketFloor = 1e-9;

struct RootBracket {
  double lo = 0.0;
  double hi = 0.0;
};

RootBracket even_bracket(double a);
/// Empty when a >= 1, or when the root is too close to zero to separate
/// from the trivial one in double precision.
std::optional<RootBracket> odd_bracket(double a);

/// Unique positive root of the even condition. Throws std::domain_error for a <= 0.
double solve_even(Coupling a, const SolverSpec& spec = {});

/// Positive root of the odd condition, or nullopt when 2 a xi only meets
/// 1 - exp(-2 xi) at xi = 0 (a >= 1). Throws std::domain_error for a <= 0.
std::optional<double> solve_odd(Coupling a, const SolverSpec& spec = {});

struct Spectrum {
  double a = 0.0;
  std::vector<BoundState> states;  // increasing energy, ground state first

  std::size_t count() const noexcept { return states.size(); }
};

/// Any finite non-zero a; repulsive couplings give an empty spectrum.
Spectrum spectrum(Coupling a, EnergyScale scale = {}, const SolverSpec& spec = {});

/// xi_even - xi_odd via 2 a (xi_e - xi_o) = exp(-2 xi_e) + exp(-2 xi_o).
/// The direct difference of the two roots underflows to zero once a is
/// small; log_gap stays finite.
struct LevelSplitting {
  double gap = 0.0;
  double log_gap = 0.0;
};

/// Requires 0 < a < 1.
LevelSplitting level_splitting(Coupling a, const SolverSpec& spec = {});

struct CurveTable {
  std::vector<double> xi;
  std::vector<double> even_rhs;  // 1 + exp(-2 xi)
  std::vector<double> odd_rhs;   // 1 - exp(-2 xi)
  std::vector<double> a_values;
  std::vector<std::vector<double>> lines;  // lines[j][i] = 2 a_j xi_i
};

/// n uniform samples on [0, xi_max]. Throws std::invalid_argument for
/// xi_max <= 0 or n < 2.
CurveTable quantization_curves(double xi_max, int n, const std::vector<double>& a_values);

}  // namespace ddelta

#endif  // DDELTA_QUANTIZE_HPP
