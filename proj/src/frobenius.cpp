#include "gwcrc/frobenius.hpp"

namespace gwcrc {

namespace {

// Extract a log-free LogSeries as a plain series; throws if a log part
// survives (the ladder must close in the plain ring).
QSeries plain_part(const LogSeries& g) {
    LogSeries h = g;
    h.normalize();
    if (h.log_degree() > 0) throw ClosureViolation("log part survives");
    return h.comps.empty() ? QSeries() : h.comps[0];
}

QSeries d_log_pow(QSeries s, long m) {
    for (long i = 0; i < m; ++i) s = d_log(s);
    return s;
}

// Nested-sum coefficient series: the inner recursion of b_series.
QSeries b_series_rec(const std::vector<QSeries>& C, long i, long ki, long p) {
    if (i == p) return d_log_pow(C[p], ki - 1);
    QSeries acc(C[1].var(), C[1].trunc());
    for (long knext = p - i; knext <= ki - 1; ++knext) {
        CycNum binom(rat_binomial(ki - 1, knext));
        acc += binom * (d_log_pow(C[i], ki - 1 - knext) *
                        b_series_rec(C, i + 1, knext, p));
    }
    return acc;
}

}  // namespace

LogSeries d_log_inverse(const LogSeries& g) {
    LogSeries gg = g;
    gg.normalize();
    long T = gg.log_degree();
    if (gg.comps.empty()) return gg;
    char v = gg.comps[0].var();
    long tr = gg.comps[0].trunc();
    LogSeries h;
    h.comps.assign(static_cast<size_t>(T) + 2, QSeries(v, tr));
    for (long j = T; j >= 0; --j) {
        // The constant term of level j forces the constant of h_{j+1}.
        CycNum c = gg.comp(j).trunc() > 0 ? gg.comp(j).coeff(0) : CycNum(0L);
        if (!c.is_zero()) {
            QSeries cj = h.comps[j + 1];
            cj.set_coeff(0, cj.coeff(0) + c);
            h.comps[j + 1] = cj;
        }
        h.comps[j] = d_log_inverse(gg.comp(j) - h.comps[j + 1]);
    }
    h.normalize();
    return h;
}

QSeries FrobeniusData::k_extended(long r) const {
    if (r < 0) throw IndexOutOfRange("k_extended");
    QSeries res = QSeries::one(L.var(), L.trunc());
    QSeries ln = L.pow(n);
    while (r > n) {
        res *= ln;
        r -= n;
    }
    return res * K[r];
}

FrobeniusData frobenius_data(Target target, long n, long order, long kmax) {
    if (kmax < 0) kmax = n + 2;
    FrobeniusData f;
    f.target = target;
    f.n = n;
    f.order = order;
    const long pad = (target == Target::CnZn) ? 6 * n + 12 : 4;
    const long worder = order + pad;

    std::vector<LogSeries> comps;  // components feeding the ladder
    if (target == Target::KP) {
        IFunctionKP I = i_function_kp(n, worder, kmax);
        f.I_kp = I.graded;
        comps = I.graded;
    } else {
        IFunctionCnZn I = i_function_cnzn(n, worder, kmax);
        f.I_orb = I.comps;
        for (const auto& c : I.comps) comps.emplace_back(c);
    }
    f.L = l_series(target, n, worder);

    // Birkhoff ladder: C_i = D L_{i-1} ... L_1 (component i), L_r = (1/C_r) D.
    long cmax = std::max(n, kmax);
    f.C.assign(cmax + 1, QSeries());
    f.C[0] = QSeries::one(f.L.var(), worder);
    for (long i = 1; i <= cmax; ++i) {
        LogSeries t = comps[i];
        for (long r = 1; r < i; ++r) t = f.C[r].inverse() * d_log(t);
        f.C[i] = plain_part(d_log(t));
    }

    f.K.assign(n + 1, QSeries());
    f.K[0] = f.C[0];
    for (long i = 1; i <= n; ++i) f.K[i] = f.K[i - 1] * f.C[i];

    f.X.assign(n + 1, QSeries());
    f.X[0] = QSeries(f.L.var(), worder);
    for (long i = 1; i <= n; ++i) f.X[i] = d_log(f.C[i]) * f.C[i].inverse();

    QSeries dll = d_log(f.L) * f.L.inverse();
    QSeries linv = f.L.inverse();
    f.A.assign(n + 1, QSeries());
    QSeries xsum(f.L.var(), worder);
    for (long i = 0; i <= n; ++i) {
        xsum += f.X[i];
        QSeries u = CycNum(Rational(i)) * dll - xsum;
        if (!u.is_zero() && u.order() < f.L.order())
            throw DivisibilityViolation("A-series");
        f.A[i] = u * linv;
    }

    CycNum si = cyc_sqrt_minus_one();
    CycNum ninv(rat(1, n));
    f.Psi.assign(n, std::vector<QSeries>(n));
    f.PsiInv.assign(n, std::vector<QSeries>(n));
    f.DU.assign(n, QSeries());
    for (long i = 0; i < n; ++i) {
        QSeries ratio = f.L.pow(i) * f.K[i].inverse();  // L^i / K_i
        QSeries ratio_inv = f.K[i] * f.L.pow(i).inverse();
        for (long a = 0; a < n; ++a) {
            CycNum za = cyc_root_of_unity(n, a * i);
            if (target == Target::KP) {
                f.Psi[a][i] = ((si * ninv) * za) * ratio;
                f.PsiInv[i][a] = ((-si) * za.inverse()) * ratio_inv;
            } else {
                f.Psi[a][i] = (ninv * za) * ratio;
                f.PsiInv[i][a] = za.inverse() * ratio_inv;
            }
        }
        f.DU[i] = cyc_root_of_unity(n, i) * f.L;
    }
    f.inv_sqrt_g = (target == Target::KP) ? (CycNum(Rational(-n)) * si)
                                          : CycNum(Rational(n));
    return f;
}

CycNum metric(Target target, long n, long i, long j) {
    if (((i + j) % n + n) % n != 0) return CycNum(0L);
    return CycNum(target == Target::KP ? rat(-1, n) : rat(1, n));
}

QSeries three_point(const FrobeniusData& f, long i, long j, long k) {
    long n = f.n;
    if ((i + j + k) % n != 0) return QSeries(f.L.var(), f.K[0].trunc());
    CycNum pre(f.target == Target::KP ? rat(-1, n) : rat(1, n));
    return pre * (f.k_extended(i + j) * (f.K[i] * f.K[j]).inverse());
}

QSeries two_point(const FrobeniusData& f, long i) {
    if (f.target != Target::KP) throw IndexOutOfRange("two_point: KP only");
    if (i < 0 || i + 1 >= static_cast<long>(f.I_kp.size()))
        throw IndexOutOfRange("two_point");
    // Row recursion toward level i, keeping columns 1..i+1-lev.
    std::vector<LogSeries> row(f.I_kp.begin(), f.I_kp.begin() + i + 2);
    for (long lev = 1; lev <= i; ++lev) {
        // Consistency: D applied to column 1 reproduces C_lev.
        if (!plain_part(d_log(row[1]) - LogSeries(f.C[lev])).known_zero())
            throw ClosureViolation("two_point ladder");
        std::vector<LogSeries> next(row.size() - 1);
        QSeries cinv = f.C[lev].inverse();
        for (size_t kcol = 1; kcol + 1 < row.size(); ++kcol)
            next[kcol] = cinv * d_log(row[kcol + 1]);
        row = std::move(next);
    }
    const LogSeries& ci1 = row[1];
    if (ci1.log_degree() != 1 ||
        !(ci1.comp(1) - QSeries::one(ci1.comp(1).var(), ci1.comp(1).trunc()))
             .known_zero())
        throw ClosureViolation("two_point log part");
    return ci1.comp(0) - f.I_kp[1].comp(0);
}

QSeries da_relation_residual(const FrobeniusData& f) {
    long n = f.n;
    QSeries ln = f.L.pow(n);
    QSeries fn = CycNum(rat_binomial(n + 1, 4) / Rational(n * n)) *
                 ((QSeries::one(f.L.var(), ln.trunc()) - ln) * f.L.pow(n - 1));
    QSeries res = fn;
    for (long r = 1; 2 * r <= n - 1; ++r) {
        res += CycNum(Rational(n - 2 * r)) * d_log(f.A[r]);
        res -= f.L * (f.A[r] * f.A[r]);
    }
    return res;
}

QSeries b_series(const FrobeniusData& f, long k, long p) {
    if (p < 1 || p > k) return QSeries(f.L.var(), f.C[1].trunc());
    return b_series_rec(f.C, 1, k, p);
}

LogSeries z_series(const FrobeniusData& f, long m, long k) {
    if (k > m) return LogSeries(QSeries(f.L.var(), f.C[1].trunc()));
    if (k == m) return LogSeries(QSeries::one(f.L.var(), f.C[1].trunc()));
    return d_log_inverse(f.C[k + 1] * z_series(f, m, k + 1));
}

LogSeries bz_commutator_residual(const FrobeniusData& f, long k, long m) {
    LogSeries Im = (f.target == Target::KP) ? f.I_kp[m] : LogSeries(f.I_orb[m]);
    LogSeries lhs = Im;
    for (long t = 0; t < k; ++t) lhs = d_log(lhs);
    for (long p = 1; p <= k; ++p) lhs -= b_series(f, k, p) * z_series(f, m, p);
    lhs.normalize();
    return lhs;
}

QSeries graded_pf_residual(const FrobeniusData& f, long m) {
    long n = f.n;
    if (m < 1 || m >= n) throw IndexOutOfRange("graded_pf_residual");
    QSeries dll = d_log(f.L) * f.L.inverse();
    QSeries acc(f.L.var(), f.C[1].trunc());
    for (long k = m; k <= n - 1; ++k) {
        Rational c;
        if (f.target == Target::KP) {
            c = stirling_first(n, k) * Rational((n - k) % 2 ? -1 : 1);
            Rational nk(1);
            for (long t = 0; t < k; ++t) nk *= n;
            c *= nk;
            Rational nn(1);
            for (long t = 0; t < n - 1; ++t) nn *= n;
            c /= nn;
        } else {
            c = -stirling_first(n, k);
        }
        acc += CycNum(c) * b_series(f, k, m);
    }
    return b_series(f, n, m) - dll * acc;
}

}  // namespace gwcrc
