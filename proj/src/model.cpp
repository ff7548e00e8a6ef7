#include "ddelta/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ddelta {

Coupling::Coupling(double a) : a_(a) {
  if (!std::isfinite(a)) throw std::invalid_argument("coupling a must be finite");
  if (a == 0.0) throw std::invalid_argument("coupling a = 0 is singular (alpha -> infinity)");
}

EnergyScale::EnergyScale(double e0) : e0_(e0) {
  if (!(std::isfinite(e0) && e0 > 0.0)) throw std::invalid_argument("energy scale e0 must be positive");
}

EnergyScale EnergyScale::from_physical(const PhysicalParams& p) {
  validate(p);
  return EnergyScale(p.hbar * p.hbar / (2.0 * p.mass * p.halfsep * p.halfsep));
}

std::string_view to_string(Parity p) noexcept { return p == Parity::Even ? "even" : "odd"; }

void validate(const PhysicalParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) throw std::invalid_argument(std::string(name) + " must be a positive finite number");
  };
  positive(p.hbar, "hbar");
  positive(p.mass, "mass");
  positive(p.halfsep, "halfsep");
  if (!std::isfinite(p.alpha) || p.alpha == 0.0) throw std::invalid_argument("alpha must be finite and non-zero");
}

Coupling coupling_from_physical(const PhysicalParams& p) {
  validate(p);
  return Coupling(p.hbar * p.hbar / (2.0 * p.mass * p.alpha * p.halfsep));
}

double alpha_from_coupling(Coupling a, double hbar, double mass, double halfsep) {
  return hbar * hbar / (2.0 * mass * a.value() * halfsep);
}

double energy_from_xi(double xi, EnergyScale scale) {
  if (!(std::isfinite(xi) && xi > 0.0)) throw std::domain_error("xi must be positive for a bound state");
  return -xi * xi * scale.e0();
}

double quantization_residual(Parity p, double a, double xi) noexcept {
  // expm1 keeps the odd branch accurate near its threshold, where xi is small
  // and 1 - exp(-2 xi) cancels.
  if (p == Parity::Even) return 2.0 * a * xi - 1.0 - std::exp(-2.0 * xi);
  return 2.0 * a * xi + std::expm1(-2.0 * xi);
}

}  // namespace ddelta
