#pragma once

#include "gwcrc/frobenius.hpp"

namespace gwcrc {

Rational bernoulli_number(long m);
Rational bernoulli_poly(long m, const Rational& x);

// Truncated polynomial arithmetic in z over the cyclotomic field.
std::vector<CycNum> zpoly_mul(const std::vector<CycNum>& a,
                              const std::vector<CycNum>& b);
std::vector<CycNum> zpoly_inverse(const std::vector<CycNum>& a);
std::vector<CycNum> zpoly_exp(const std::vector<CycNum>& e);

// z-coefficients (length zorder+1) of the asymptotic normalization
// factor Q_i(z) at the i-th fixed point / sector.
std::vector<CycNum> qrr_coeffs(Target target, long n, long i, long zorder);

// Flat-section coefficient tables: P[k][i][j] is the z^k coefficient of the
// (i,j) entry, Pt the rescaled variant used by the descending solve.
struct PTable {
    Target target = Target::KP;
    long n = 0;
    long kmax = 0;
    bool true_r = false;
    std::vector<std::vector<std::vector<QSeries>>> Pt, P;
};

// Solve the flatness equations level by level; true_r selects the origin
// constants coming from qrr_coeffs (otherwise zero beyond level 0).
PTable solve_flatness(const FrobeniusData& f, long kmax, bool true_r);

// Residual of the first-order equation in the original variables (k >= 1).
QSeries flatness_residual(const FrobeniusData& f, const PTable& p, long k,
                          long i, long j);

// Fit row-0 entries as Laurent polynomials in L (guarded).
LPoly reconstruct_row0(const FrobeniusData& f, const PTable& p, long k, long j,
                       bool tilde = true);

// z^m coefficient of R(z) R(-z)^T - Id at frame indices (a, b), R = Psi P.
QSeries symplectic_residual(const FrobeniusData& f, const PTable& p, long m,
                            long a, long b);

// Row-0 entries of the true table fitted as polynomials in L: result[j][k].
std::vector<std::vector<LPoly>> true_row0_fits(Target target, long n, long kmax,
                                               long order);

// Verify the cross-target matching of row-0 data under L -> -(rho/n) L and
// z -> rho z; throws InvalidRho unless rho^n = -1.
bool match_p0j(long n, long kmax, long order, const CycNum& rho);
// Candidate scaling constants: -1 for odd n, odd powers of a primitive
// 2n-th root for even n.
std::vector<CycNum> rho_candidates(long n);
// First candidate that matches; throws InvalidRho when none does.
CycNum find_rho(long n, long kmax, long order);

// Coefficient-wise residual of the asymptotic product identity, entries
// indexed by z-order.
std::vector<CycNum> r_identity_residual(long n, long zorder, long order);

}  // namespace gwcrc
