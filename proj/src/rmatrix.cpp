#include "gwcrc/rmatrix.hpp"

#include <mutex>

namespace gwcrc {

namespace {

std::vector<Rational> g_bernoulli = {Rational(1)};
std::mutex g_bernoulli_mutex;

}  // namespace

Rational bernoulli_number(long m) {
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    while (static_cast<long>(g_bernoulli.size()) <= m) {
        long k = static_cast<long>(g_bernoulli.size());
        // sum_{j=0}^{k} binom(k+1, j) B_j = 0
        Rational s(0);
        for (long j = 0; j < k; ++j) s += rat_binomial(k + 1, j) * g_bernoulli[j];
        g_bernoulli.push_back(-s / Rational(k + 1));
    }
    return g_bernoulli[m];
}

Rational bernoulli_poly(long m, const Rational& x) {
    Rational s(0);
    Rational xp(1);
    for (long k = m; k >= 0; --k) {
        s += rat_binomial(m, k) * bernoulli_number(k) * xp;
        xp *= x;
    }
    return s;
}

std::vector<CycNum> zpoly_mul(const std::vector<CycNum>& a,
                              const std::vector<CycNum>& b) {
    size_t len = std::min(a.size(), b.size());
    std::vector<CycNum> r(len, CycNum(0L));
    for (size_t i = 0; i < len; ++i)
        for (size_t j = 0; i + j < len && j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

std::vector<CycNum> zpoly_inverse(const std::vector<CycNum>& a) {
    std::vector<CycNum> b(a.size(), CycNum(0L));
    CycNum inv0 = a[0].inverse();
    b[0] = inv0;
    for (size_t k = 1; k < a.size(); ++k) {
        CycNum s(0L);
        for (size_t t = 1; t <= k; ++t) s += a[t] * b[k - t];
        b[k] = -(inv0 * s);
    }
    return b;
}

std::vector<CycNum> zpoly_exp(const std::vector<CycNum>& e) {
    if (e.empty() || !e[0].is_zero()) throw BadConstantTerm("zpoly_exp");
    std::vector<CycNum> q(e.size(), CycNum(0L));
    q[0] = CycNum(1L);
    for (size_t k = 1; k < e.size(); ++k) {
        CycNum s(0L);
        for (size_t t = 1; t <= k; ++t)
            s += CycNum(Rational(static_cast<long>(t))) * (e[t] * q[k - t]);
        q[k] = CycNum(rat(1, static_cast<long>(k))) * s;
    }
    return q;
}

std::vector<CycNum> qrr_coeffs(Target target, long n, long i, long zorder) {
    std::vector<CycNum> e(zorder + 1, CycNum(0L));
    if (target == Target::KP) {
        for (long t = 1; t <= zorder; t += 2) {
            long m = (t + 1) / 2;  // t = 2m - 1
            CycNum N(0L);
            CycNum mn(rat(-1, n));
            N += mn.pow(t);
            for (long l = 1; l < n; ++l) {
                CycNum d = CycNum(1L) - cyc_root_of_unity(n, l);
                N += d.inverse().pow(t);
            }
            N = cyc_root_of_unity(n, -i * t) * N;
            Rational w = -bernoulli_number(2 * m) / Rational(2 * m * (2 * m - 1));
            e[t] = CycNum(w) * N;
        }
    } else {
        for (long l = 1; n * l <= zorder; ++l) {
            Rational w = Rational(n) * bernoulli_poly(n * l + 1, rat(i, n)) /
                         Rational((n * l + 1) * (n * l));
            if (l % 2) w = -w;
            e[n * l] = CycNum(w);
        }
    }
    return zpoly_exp(e);
}

PTable solve_flatness(const FrobeniusData& f, long kmax, bool true_r) {
    long n = f.n;
    PTable t;
    t.target = f.target;
    t.n = n;
    t.kmax = kmax;
    t.true_r = true_r;
    char var = f.L.var();
    long worder = f.L.trunc();
    CycNum si = cyc_sqrt_minus_one();

    // Row 0 per column j via the integrated ladder.
    std::vector<std::vector<QSeries>> row0(
        kmax + 1, std::vector<QSeries>(n, QSeries(var, worder)));
    for (long j = 0; j < n; ++j) {
        std::vector<CycNum> org(kmax + 1, CycNum(0L));
        if (f.target == Target::KP) {
            auto q = qrr_coeffs(Target::KP, n, j, kmax);
            org[0] = -si;
            if (true_r)
                for (long k = 1; k <= kmax; ++k) org[k] = (-si) * q[k];
        } else {
            auto q = qrr_coeffs(Target::CnZn, n, 0, kmax);
            org[0] = CycNum(1L);
            if (true_r)
                for (long k = 1; k <= kmax; ++k) org[k] = q[k];
        }
        std::vector<QSeries> lv = {QSeries::constant(var, org[0], worder)};
        for (long k = 1; k <= kmax; ++k)
            lv.push_back(ladder_step(f.target, n, lv, j, org[k], f.L));
        for (long k = 0; k <= kmax; ++k) row0[k][j] = lv[k];
    }

    t.Pt.assign(kmax + 1, std::vector<std::vector<QSeries>>(
                              n, std::vector<QSeries>(n, QSeries(var, worder))));
    QSeries linv = f.L.inverse();
    for (long k = 0; k <= kmax; ++k) {
        for (long j = 0; j < n; ++j) {
            t.Pt[k][0][j] = cyc_root_of_unity(n, k * j) * row0[k][j];
            QSeries prev0 =
                (k > 0) ? t.Pt[k - 1][0][j] : QSeries(var, worder);
            t.Pt[k][n - 1][j] = t.Pt[k][0][j] + linv * d_log(prev0);
            for (long i = n - 1; i >= 2; --i) {
                QSeries prev =
                    (k > 0) ? t.Pt[k - 1][i][j] : QSeries(var, worder);
                t.Pt[k][i - 1][j] =
                    t.Pt[k][i][j] + linv * d_log(prev) - f.A[i] * prev;
            }
            QSeries prev1 = (k > 0) ? t.Pt[k - 1][1][j] : QSeries(var, worder);
            QSeries clos = t.Pt[k][1][j] + linv * d_log(prev1) -
                           f.A[1] * prev1 - t.Pt[k][0][j];
            long check = std::min(clos.trunc(), f.order);
            if (!clos.truncated(check).known_zero())
                throw ClosureViolation("flatness chain, level " +
                                       std::to_string(k));
        }
    }

    t.P = t.Pt;
    for (long i = 0; i < n; ++i) {
        QSeries ratio = f.K[i] * f.L.pow(i).inverse();
        for (long k = 0; k <= kmax; ++k)
            for (long j = 0; j < n; ++j)
                t.P[k][i][j] = cyc_root_of_unity(n, -(k + i) * j) *
                               (ratio * t.Pt[k][i][j]);
    }
    return t;
}

QSeries flatness_residual(const FrobeniusData& f, const PTable& p, long k,
                          long i, long j) {
    if (k < 1 || k > p.kmax) throw IndexOutOfRange("flatness_residual");
    long n = f.n;
    long ion = ion_index(n, i);
    CycNum zj = cyc_root_of_unity(n, j);
    return d_log(p.P[k - 1][i][j]) - f.C[ion] * p.P[k][ion - 1][j] +
           zj * (f.L * p.P[k][i][j]);
}

LPoly reconstruct_row0(const FrobeniusData& f, const PTable& p, long k, long j,
                       bool tilde) {
    const QSeries& s = tilde ? p.Pt[k][0][j] : p.P[k][0][j];
    long n = f.n;
    long cap = std::max(4 * n * std::max(k, 1L), n);
    for (long deg = n; deg <= cap; deg += n) {
        try {
            return fit_lpoly(s, f.L, deg);
        } catch (const NoPolynomialFit&) {
        }
    }
    throw NoPolynomialFit("reconstruct_row0 level " + std::to_string(k));
}

QSeries symplectic_residual(const FrobeniusData& f, const PTable& p, long m,
                            long a, long b) {
    long n = f.n;
    char var = f.L.var();
    long worder = f.L.trunc();
    // R^{(k)}_{alpha j} = sum_i Psi_{alpha i} P^k_{i j}
    auto rk = [&](long k, long al, long j) {
        QSeries s(var, worder);
        for (long i = 0; i < n; ++i) s += f.Psi[al][i] * p.P[k][i][j];
        return s;
    };
    QSeries res(var, worder);
    for (long k = 0; k <= m; ++k) {
        QSeries term(var, worder);
        for (long j = 0; j < n; ++j) term += rk(k, a, j) * rk(m - k, b, j);
        if (k % 2) term = -term;
        res += term;
    }
    if (m == 0 && a == b) res -= QSeries::one(var, res.trunc());
    return res;
}

std::vector<std::vector<LPoly>> true_row0_fits(Target target, long n, long kmax,
                                               long order) {
    FrobeniusData f = frobenius_data(target, n, order);
    PTable p = solve_flatness(f, kmax, true);
    std::vector<std::vector<LPoly>> out(n);
    for (long j = 0; j < n; ++j)
        for (long k = 0; k <= kmax; ++k)
            out[j].push_back(reconstruct_row0(f, p, k, j, false));
    return out;
}

std::vector<CycNum> rho_candidates(long n) {
    if (n % 2) return {CycNum(-1L)};
    std::vector<CycNum> c;
    for (long m = 1; m < 2 * n; m += 2) c.push_back(cyc_root_of_unity(2 * n, m));
    return c;
}

bool match_p0j(long n, long kmax, long order, const CycNum& rho) {
    if (!(rho.pow(n) + CycNum(1L)).is_zero())
        throw InvalidRho("rho^n != -1");
    CycNum si = cyc_sqrt_minus_one();
    auto fk = true_row0_fits(Target::KP, n, kmax, order);
    auto fc = true_row0_fits(Target::CnZn, n, kmax, order);
    CycNum scale = CycNum(rat(-1, n)) * rho;
    for (long j = 0; j < n; ++j)
        for (long k = 0; k <= kmax; ++k) {
            LPoly lhs = (-si) * fc[j][k];
            LPoly rhs = rho.pow(k) * fk[j][k].scale_var(scale);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

CycNum find_rho(long n, long kmax, long order) {
    for (const CycNum& rho : rho_candidates(n))
        if (match_p0j(n, kmax, order, rho)) return rho;
    throw InvalidRho("no candidate matches");
}

std::vector<CycNum> r_identity_residual(long n, long zorder, long order) {
    std::vector<LPoly> phis = phi_asymptotic(n, zorder, order);
    CycNum si = cyc_sqrt_minus_one();
    std::vector<CycNum> a(zorder + 1, CycNum(0L));
    for (long k = 0; k <= zorder; ++k) {
        if (phis[k].min_exp() < 0)
            throw UnstableInput("negative powers in asymptotic fit");
        a[k] = (-si) * phis[k].coeff(0);
    }
    std::vector<CycNum> e(zorder + 1, CycNum(0L));
    for (long l = 1; n * l <= zorder; ++l)
        e[n * l] = CycNum(Rational(n) * bernoulli_poly(n * l + 1, Rational(0)) /
                          Rational((n * l + 1) * (n * l)));
    std::vector<CycNum> lhs = zpoly_exp(e);
    std::vector<CycNum> rhs = zpoly_mul(a, qrr_coeffs(Target::KP, n, 0, zorder));
    std::vector<CycNum> res(zorder + 1, CycNum(0L));
    for (long k = 0; k <= zorder; ++k) res[k] = (-si) * lhs[k] - rhs[k];
    return res;
}

}  // namespace gwcrc
