#ifndef DDELTA_LAMBERT_W_HPP
#define DDELTA_LAMBERT_W_HPP

// Real branches of the Lambert W function, w e^w = z, by Halley iteration.
// Used only as an independent closed-form check on the quantization roots:
//
//     xi_even = (1/a + W0(exp(-1/a) / a)) / 2
//     xi_odd  = (1/a + W(-exp(-1/a) / a)) / 2
//
// where the odd branch is whichever real branch is not the trivial -1/a
// (W0 for a < 1).

#include <optional>

namespace ddelta {

/// Principal branch, z >= -1/e.
double lambert_w0(double z);
/// Lower branch, -1/e <= z < 0.
double lambert_wm1(double z);

double even_root_closed_form(double a);
/// nullopt for a >= 1.
std::optional<double> odd_root_closed_form(double a);

}  // namespace ddelta

#endif  // DDELTA_LAMBERT_W_HPP
