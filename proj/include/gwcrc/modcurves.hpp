#pragma once

#include <vector>

#include "gwcrc/rational.hpp"

namespace gwcrc {

// Intersection number of psi-classes: integral of psi_1^{a_1}...psi_N^{a_N}
// over the genus-g moduli space with N marked points. Returns 0 when the
// dimension constraint sum a_i = 3g - 3 + N fails; throws UnstableInput for
// negative entries or an unstable (g, N) pair.
Rational psi_integral(long g, const std::vector<long>& a);

// String equation residual: <tau_0 prod> - sum_j <tau_{a_j - 1} ...>.
Rational string_residual(long g, const std::vector<long>& a);
// Dilaton equation residual: <tau_1 prod> - (2g - 2 + N) <prod>.
Rational dilaton_residual(long g, const std::vector<long>& a);

}  // namespace gwcrc
