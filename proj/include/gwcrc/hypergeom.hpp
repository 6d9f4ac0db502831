#pragma once

#include <vector>

#include "gwcrc/logseries.hpp"
#include "gwcrc/lpoly.hpp"

namespace gwcrc {

enum class Target { KP, CnZn };

// Signed Stirling numbers of the first kind: coefficient of t^k in
// t(t-1)...(t-n+1).
Rational stirling_first(long n, long k);

struct IFunctionKP {
    long n = 0;
    long qorder = 0;
    long kmax = 0;
    // plain[k] = I_k(q), the scalar multiplying H^{k mod n} (H/z)^k-component.
    std::vector<QSeries> plain;
    // graded[k] = the k-th component after multiplying by e^{H log q / z}:
    // graded[k].comps[j] = I_{k-j}(q).
    std::vector<LogSeries> graded;
};

struct IFunctionCnZn {
    long n = 0;
    long xorder = 0;
    long kmax = 0;
    // comps[k] = coefficient of z^{-k}; it pairs with phi_{k mod n}.
    std::vector<QSeries> comps;
};

IFunctionKP i_function_kp(long n, long qorder, long kmax);
IFunctionCnZn i_function_cnzn(long n, long xorder, long kmax);

// KP: (1-(-n)^n q)^{-1/n}; CnZn: x (1-(-1)^n (x/n)^n)^{-1/n}.
QSeries l_series(Target target, long n, long order);

// The order-n operator residual applied to the graded component family; the
// k-th entry is the full operator applied to component k minus L^n times
// component k-n. All entries vanish when the family solves the equation.
std::vector<LogSeries> pf_residual_kp(long n, const std::vector<LogSeries>& comps,
                                      const QSeries& L);
std::vector<QSeries> pf_residual_cnzn(long n, const std::vector<QSeries>& comps,
                                      const QSeries& L);

// Non-log part of log Q = log q + n*Phi_0.
QSeries mirror_map(long n, long order);
// q as a series in Q (reversion of Q = q exp(n Phi_0)).
QSeries mirror_map_inverse(long n, long order);

// Graded polynomial H_{m,j}(X) (KP side), and its orbifold counterpart.
LPoly h_poly(long n, long m, long j);
LPoly h_poly_orb(long n, long m, long j);

// Ladder operators: coefficients are Laurent polynomials in X = L^n
// (variable of the returned DiffOp is X).
DiffOp l_jk_operator_x(Target target, long n, long k);
// Same with X = L^n substituted (variable is L).
DiffOp l_jk_operator(Target target, long n, long k);

// Derivation data for the coefficient rings: D(X) as an LPoly in X.
LPoly dx_of_x(Target target, long n);

// Congruence check of the ladder operator against
// binom(n,k) D (D - Y) ... (D - (k-1)Y) modulo the ideal (X*Y); y_shift
// perturbs Y for negative controls.
bool verify_mod_ideal(long n, long k, const Rational& y_shift = Rational(0));

// Coefficient-wise comparison of the two targets' ladder operators under the
// change of variables; sign_flip provides a negative control.
bool operator_comparison_under_change(long n, long k, bool sign_flip = false);

// Decomposition residual of the full operator against the graded ladder,
// evaluated on a test series; zero entries certify the identity. Entry t is
// the coefficient of z^{-t}.
std::vector<QSeries> l_decomposition_residual(Target target, long n, long j,
                                              const QSeries& test,
                                              const QSeries& L);

// One step of the row-0 ladder: given levels prev[0..k-1], returns level k
// with n D p_k = -sum_{r=2}^{n} zeta^{j(1-r)} L^{1-r} (ladder_r applied to
// prev[k+1-r]); the integration constant is `origin`, and a nonzero constant
// term in the right-hand side raises ConstantMismatch.
QSeries ladder_step(Target target, long n, const std::vector<QSeries>& prev,
                    long j, const CycNum& origin, const QSeries& L);

// Asymptotic solution of the ladder with value 1 at the origin, each level
// reconstructed as a Laurent polynomial in L.
std::vector<LPoly> phi_asymptotic(long n, long kmax, long order);

}  // namespace gwcrc
