#include "pdemhe/bounds.hpp"

#include <cmath>
#include <numbers>

namespace pdemhe {

double hyperbolic_kernel_bound(double sup_f, double x, double y) {
  return sup_f * (1.0 - x) * std::exp(sup_f * (x - y) * (1.0 - x));
}

double inverse_kernel_bound(double kbar) { return kbar * std::exp(kbar); }

double hyperbolic_inverse_bound(double sup_f) {
  const double a = sup_f * std::exp(sup_f);
  return a * std::exp(a);
}

double parabolic_kernel_bound(double sup_lambda, double x) {
  return sup_lambda * std::exp(2.0 * sup_lambda * x);
}

double parabolic_inverse_bound(double sup_lambda) {
  return inverse_kernel_bound(parabolic_kernel_bound(sup_lambda, 1.0));
}

double parabolic_log_overshoot(double sup_lambda) {
  const double q = sup_lambda * std::exp(2.0 * sup_lambda);
  return 2.0 * std::log1p(q) + q;
}

double parabolic_overshoot(double sup_lambda) {
  return std::exp(parabolic_log_overshoot(sup_lambda));
}

double contraction_threshold(double sup_lambda) {
  return parabolic_log_overshoot(sup_lambda) / (std::numbers::pi * std::numbers::pi);
}

double hyperbolic_overshoot(double sup_f, double c) {
  const double a = sup_f * std::exp(sup_f);
  return std::exp(c) * (1.0 + a * std::exp(a)) * (1.0 + a);
}

}  // namespace pdemhe
