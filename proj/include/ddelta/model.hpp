#ifndef DDELTA_MODEL_HPP
#define DDELTA_MODEL_HPP

// Core domain types for the symmetric double-delta well
//
//     V(x) = -alpha [ delta(x + L) + delta(x - L) ]
//
// Everything downstream of this header works in canonical units where the
// half-separation L and the energy scale e0 = hbar^2 / (2 m L^2) are both 1,
// so the spectrum depends on the single coupling a = hbar^2 / (2 m alpha L).
// Positive alpha is an attractive pair of wells (a > 0); negative alpha is a
// pair of barriers (a < 0).

#include <string_view>

namespace ddelta {

struct PhysicalParams {
  double hbar = 1.0;
  double mass = 0.5;
  double alpha = 1.0;    // delta strength, energy * length
  double halfsep = 1.0;  // distance from the origin to each delta
};

/// Dimensionless coupling a. Finite and non-zero.
class Coupling {
 public:
  explicit Coupling(double a);

  double value() const noexcept { return a_; }
  bool attractive() const noexcept { return a_ > 0.0; }

 private:
  double a_;
};

/// e0 = hbar^2 / (2 m L^2); bound energies are E = -xi^2 e0.
class EnergyScale {
 public:
  EnergyScale() = default;
  explicit EnergyScale(double e0);

  static EnergyScale from_physical(const PhysicalParams& p);

  double e0() const noexcept { return e0_; }

 private:
  double e0_ = 1.0;
};

enum class Parity { Even, Odd };

std::string_view to_string(Parity p) noexcept;

/// +1 for Even, -1 for Odd: phi(-x) = sign * phi(x).
inline double parity_sign(Parity p) noexcept { return p == Parity::Even ? 1.0 : -1.0; }

struct BoundState {
  Parity parity = Parity::Even;
  double xi = 0.0;  // decay constant in units of 1/L
  Coupling coupling{1.0};
  double energy = 0.0;  // -xi^2 e0
};

/// Throws std::invalid_argument when hbar, mass or halfsep are not positive
/// finite numbers, or alpha is zero or non-finite.
void validate(const PhysicalParams& p);

Coupling coupling_from_physical(const PhysicalParams& p);

/// Inverse of coupling_from_physical for a fixed hbar, mass and halfsep.
double alpha_from_coupling(Coupling a, double hbar, double mass, double halfsep);

/// Throws std::domain_error for xi <= 0 or non-finite xi.
double energy_from_xi(double xi, EnergyScale scale = {});

/// Quantization residual 2 a xi - 1 -+ exp(-2 xi) of the given branch.
double quantization_residual(Parity p, double a, double xi) noexcept;

}  // namespace ddelta

#endif  // DDELTA_MODEL_HPP
