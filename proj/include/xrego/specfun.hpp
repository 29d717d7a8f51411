#pragma once

namespace xrego::specfun {

// Generalized binomial coefficient through log-gamma. All three gamma
// arguments (i+1, j+1, i-j+1) must be positive; violations throw.
double log_binomial(double i, double j);

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b), evaluated by Lentz's continued
// fraction with relative target 1e-15.
double ibeta(double x, double a, double b);

// log(I_x(a,b)), stable when the result underflows linear doubles.
double log_ibeta(double x, double a, double b);

// log of the sin-power integral: log( int_0^theta sin^n(x) dx ),
// via int_0^theta sin^n = (1/2) B(sin^2 theta; (n+1)/2, 1/2).
// Requires 0 <= theta <= pi/2 and n >= 0.
double log_sin_power_integral(double theta, int n);

}  // namespace xrego::specfun
