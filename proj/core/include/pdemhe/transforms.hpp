#pragma once

#include "pdemhe/grid.hpp"
#include "pdemhe/kernels.hpp"

namespace pdemhe {

/// u(x) = w(x) - int_0^x k(x,y) w(y) dy
Profile forward_transform_hyperbolic(const Profile& w, const KernelTable& k);

/// w(x) = u(x) + int_0^x l(x,y) u(y) dy
Profile inverse_transform_hyperbolic(const Profile& u, const KernelTable& l);

/// u(x) = w(x) - int_x^1 k(y,x) w(y) dy  (transposed kernel)
Profile forward_transform_parabolic(const Profile& w, const KernelTable& k);

/// w(x) = u(x) + int_x^1 l(y,x) u(y) dy
Profile inverse_transform_parabolic(const Profile& u, const KernelTable& l);

}  // namespace pdemhe
