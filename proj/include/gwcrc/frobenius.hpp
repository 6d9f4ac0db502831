#pragma once

#include "gwcrc/hypergeom.hpp"

namespace gwcrc {

inline long inv_index(long n, long i) { return i == 0 ? 0 : n - i; }
inline long ion_index(long n, long i) { return i == 0 ? n : i; }

struct FrobeniusData {
    Target target = Target::KP;
    long n = 0;
    long order = 0;
    QSeries L;
    std::vector<QSeries> C;  // index 0..n
    std::vector<QSeries> K;  // index 0..n
    std::vector<QSeries> X;  // index 0..n
    std::vector<QSeries> A;  // index 0..n
    std::vector<std::vector<QSeries>> Psi;     // n x n
    std::vector<std::vector<QSeries>> PsiInv;  // n x n
    std::vector<QSeries> DU;                   // diagonal, j-th entry zeta^j L
    // Branch of g(e,e)^{-1/2} fixed by the normalized idempotents.
    CycNum inv_sqrt_g;
    // I-function components retained for downstream identity checks.
    std::vector<LogSeries> I_kp;
    std::vector<QSeries> I_orb;

    // K_r extended to all r >= 0 via K_{n+r} = L^n K_r.
    QSeries k_extended(long r) const;
};

FrobeniusData frobenius_data(Target target, long n, long order, long kmax = -1);

CycNum metric(Target target, long n, long i, long j);

// Genus-0 three-point invariant <c_i, c_j, c_k>.
QSeries three_point(const FrobeniusData& f, long i, long j, long k);

// The i-th two-point series with the pure-log part removed (1 <= i <= n-1).
QSeries two_point(const FrobeniusData& f, long i);

// Residual of the differential relation among the A-series.
QSeries da_relation_residual(const FrobeniusData& f);

// B_{k,p} / Z_{m,p} ingredients for the commutator identity.
QSeries b_series(const FrobeniusData& f, long k, long p);
LogSeries z_series(const FrobeniusData& f, long m, long k);
// D^k applied to component m minus sum_p B_{k,p} Z_{m,p}.
LogSeries bz_commutator_residual(const FrobeniusData& f, long k, long m);
// Graded equation residual: B_{n,m} - (DL/(n^{n-1}L)) sum_k ... B_{k,m}.
QSeries graded_pf_residual(const FrobeniusData& f, long m);

// Solve D h = g in the log-graded ring; integration constant zero.
LogSeries d_log_inverse(const LogSeries& g);

}  // namespace gwcrc
