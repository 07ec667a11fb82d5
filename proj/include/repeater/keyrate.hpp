#pragma once

namespace qrep {

// h(Q) in bits, with h(0) = h(1) = 0.
double binary_entropy(double q) noexcept;

// Asymptotic four-state (BB84) secure fraction max(1 - 2 h(Q), 0).
double secure_fraction(double q) noexcept;

// Root of 1 - 2 h(Q) on (0, 0.5), located by bisection (~0.110028).
double secure_fraction_threshold();

}  // namespace qrep
