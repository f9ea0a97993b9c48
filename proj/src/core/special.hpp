#pragma once

// Special functions used as closed-form oracles: incomplete gamma (series for
// x < a + 1, Lentz continued fraction otherwise), Beta, and sphere measures.

namespace sdwave::special {

/// Lower incomplete gamma γ(a, x) = ∫₀ˣ s^{a-1} e^{-s} ds, a > 0, x >= 0.
double lower_gamma(double a, double x);

/// Upper incomplete gamma Γ(a, x) = ∫ₓ^∞ s^{a-1} e^{-s} ds, a > 0, x >= 0.
double upper_gamma(double a, double x);

/// Regularised forms P = γ/Γ and Q = Γ(a,x)/Γ.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double beta(double a, double b);

/// Surface measure ω_{n-1} of the unit sphere in Rⁿ (2, 2π, 4π, ...).
double sphere_measure(int n);

}  // namespace sdwave::special
