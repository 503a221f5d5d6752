#include "pdemhe/transforms.hpp"

#include <vector>

namespace pdemhe {

namespace {

// p(x_i) + sign * int_0^{x_i} kernel(i, j) p(x_j) dy
Profile apply_lower(const Profile& p, const KernelTable& kernel, double sign) {
  require_same_grid(p.grid(), kernel.grid(), "backstepping transform");
  const double h = p.grid().dx();
  std::vector<double> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    double acc = 0.0;
    if (i > 0) {
      acc = 0.5 * (kernel(i, 0) * p[0] + kernel(i, i) * p[i]);
      for (std::size_t j = 1; j < i; ++j) acc += kernel(i, j) * p[j];
      acc *= h;
    }
    out[i] = p[i] + sign * acc;
  }
  return Profile(p.grid(), std::move(out));
}

// p(x_i) + sign * int_{x_i}^1 kernel(j, i) p(x_j) dy
Profile apply_upper(const Profile& p, const KernelTable& kernel, double sign) {
  require_same_grid(p.grid(), kernel.grid(), "backstepping transform");
  const std::size_t n = p.size();
  const double h = p.grid().dx();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    if (i + 1 < n) {
      acc = 0.5 * (kernel(i, i) * p[i] + kernel(n - 1, i) * p[n - 1]);
      for (std::size_t j = i + 1; j + 1 < n; ++j) acc += kernel(j, i) * p[j];
      acc *= h;
    }
    out[i] = p[i] + sign * acc;
  }
  return Profile(p.grid(), std::move(out));
}

}  // namespace

Profile forward_transform_hyperbolic(const Profile& w, const KernelTable& k) {
  return apply_lower(w, k, -1.0);
}

Profile inverse_transform_hyperbolic(const Profile& u, const KernelTable& l) {
  return apply_lower(u, l, 1.0);
}

Profile forward_transform_parabolic(const Profile& w, const KernelTable& k) {
  return apply_upper(w, k, -1.0);
}

Profile inverse_transform_parabolic(const Profile& u, const KernelTable& l) {
  return apply_upper(u, l, 1.0);
}

}  // namespace pdemhe
