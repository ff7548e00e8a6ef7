#ifndef DDELTA_VERIFY_HPP
#define DDELTA_VERIFY_HPP

// The seeded invariant suite behind `ddelta verify`. Each check reports the
// worst measured value and the bound it must stay within.

#include <cstdint>
#include <string>
#include <vector>

#include "ddelta/oracle.hpp"
#include "ddelta/quadrature.hpp"

namespace ddelta {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  QuadratureSpec quad{};
  GridSpec grid{};
};

std::vector<CheckResult> run_verification(const VerifyOptions& opts);

}  // namespace ddelta

#endif  // DDELTA_VERIFY_HPP
