#pragma once

namespace pdemhe {

/// |k(x,y)| <= M_f (1-x) exp(M_f (x-y)(1-x)) for the hyperbolic kernel.
double hyperbolic_kernel_bound(double sup_f, double x, double y);

/// |l| <= kbar exp(kbar) for the inverse of any kernel bounded by kbar.
double inverse_kernel_bound(double kbar);

/// Coefficient-level inverse bound (M_f e^{M_f}) exp(M_f e^{M_f}).
double hyperbolic_inverse_bound(double sup_f);

/// |k(x,y)| <= lambda_bar exp(2 lambda_bar x) for the parabolic kernel.
double parabolic_kernel_bound(double sup_lambda, double x);

/// Inverse bound obtained from the kernel bound at x = 1.
double parabolic_inverse_bound(double sup_lambda);

/// Overshoot constant M = (1+q)^2 e^q, q = lambda_bar e^{2 lambda_bar}.
/// Overflows to infinity for large lambda_bar; use the log form then.
double parabolic_overshoot(double sup_lambda);
double parabolic_log_overshoot(double sup_lambda);

/// Smallest horizon for which the per-window error map contracts: ln(M)/pi^2.
double contraction_threshold(double sup_lambda);

/// M = e^c (1 + (M_f e^{M_f}) e^{M_f e^{M_f}}) (1 + M_f e^{M_f}).
double hyperbolic_overshoot(double sup_f, double c);

}  // namespace pdemhe
