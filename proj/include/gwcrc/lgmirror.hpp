#pragma once

#include "gwcrc/logseries.hpp"

namespace gwcrc {

// Critical-point data of the Landau-Ginzburg potential mirror to the
// projective target: w[i] = L - zeta^i for i < n and w[n] = -n L, all series
// in q. Fractional powers of q never appear; the critical equations are
// verified in the rationalized form (-n (w_i + zeta^i))^n q = w_0 ... w_{n-1}.
struct CriticalData {
    long n = 0;
    std::vector<QSeries> w;  // size n + 1
};

// Builds the critical point and verifies the critical equations and the
// constraint w_0 ... w_{n-1} = q w_n^n; throws ResidualNonzero on failure.
CriticalData critical_point(long n, long order);

// Constraint residual for an arbitrary w-vector (negative controls).
QSeries constraint_residual(long n, const std::vector<QSeries>& w);

// Sum_i zeta^i D L / (L - zeta^i); asserts equality with L and that the
// log-extended potential derivative closes (D mu_0 = L), then returns it.
QSeries critical_value_derivative(long n, long order);

// Determinant of (delta_ij w_j + w_n / n^2) for an arbitrary w-vector.
QSeries hessian_det_of(long n, const std::vector<QSeries>& w);

// Hessian determinant at the critical point; asserts it equals -1 exactly.
QSeries hessian_det(long n, long order);

}  // namespace gwcrc
