#include "gwcrc/hypergeom.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace gwcrc {

Rational stirling_first(long n, long k) {
    if (k < 0 || k > n) throw IndexOutOfRange("stirling_first");
    // Expand t(t-1)...(t-n+1).
    std::vector<Rational> p = {Rational(0), Rational(1)};  // t
    for (long i = 1; i < n; ++i) {
        std::vector<Rational> q(p.size() + 1, Rational(0));
        for (size_t e = 0; e < p.size(); ++e) {
            q[e + 1] += p[e];
            q[e] -= Rational(i) * p[e];
        }
        p = std::move(q);
    }
    if (n == 0) return k == 0 ? Rational(1) : Rational(0);
    return k < static_cast<long>(p.size()) ? p[k] : Rational(0);
}

namespace {

// Elements of Q[H]/(H^n - 1) [[w]] truncated at w^wmax (exclusive).
using HW = std::vector<std::vector<Rational>>;

HW hw_one(long n, long wmax) {
    HW a(wmax, std::vector<Rational>(n, Rational(0)));
    a[0][0] = 1;
    return a;
}

HW hw_mul(const HW& a, const HW& b, long n) {
    long wmax = static_cast<long>(a.size());
    HW r(wmax, std::vector<Rational>(n, Rational(0)));
    for (long i = 0; i < wmax; ++i)
        for (long h1 = 0; h1 < n; ++h1) {
            if (a[i][h1] == 0) continue;
            for (long j = 0; i + j < wmax; ++j)
                for (long h2 = 0; h2 < n; ++h2) {
                    if (b[j][h2] == 0) continue;
                    r[i + j][(h1 + h2) % n] += a[i][h1] * b[j][h2];
                }
        }
    return r;
}

// Inverse of a series whose w^0 coefficient is a nonzero rational scalar.
HW hw_inverse(const HW& a, long n) {
    long wmax = static_cast<long>(a.size());
    for (long h = 1; h < n; ++h)
        if (a[0][h] != 0) throw Error("hw_inverse: non-scalar constant term");
    Rational c0 = a[0][0];
    if (c0 == 0) throw Error("hw_inverse: zero constant term");
    HW inv(wmax, std::vector<Rational>(n, Rational(0)));
    inv[0][0] = Rational(1) / c0;
    for (long m = 1; m < wmax; ++m) {
        std::vector<Rational> acc(n, Rational(0));
        for (long e = 1; e <= m; ++e)
            for (long h1 = 0; h1 < n; ++h1) {
                if (a[e][h1] == 0) continue;
                for (long h2 = 0; h2 < n; ++h2) {
                    if (inv[m - e][h2] == 0) continue;
                    acc[(h1 + h2) % n] += a[e][h1] * inv[m - e][h2];
                }
            }
        for (long h = 0; h < n; ++h) inv[m][h] = -acc[h] / c0;
    }
    return inv;
}

}  // namespace

IFunctionKP i_function_kp(long n, long qorder, long kmax) {
    IFunctionKP I;
    I.n = n;
    I.qorder = qorder;
    I.kmax = kmax;
    I.plain.assign(kmax + 1, QSeries('q', qorder));
    long wmax = kmax + 1;
    I.plain[0].set_coeff(0, CycNum(1L));
    for (long d = 1; d < qorder; ++d) {
        // Degree-d summand expanded in w = 1/z over Q[H]/(H^n - 1):
        // prod_{k=0}^{nd-1}(k + nHw) / prod_{k=1}^{d} sum_{t<n} C(n,t)k^{n-t}H^t w^t.
        HW num = hw_one(n, wmax);
        for (long k = 0; k < n * d; ++k) {
            HW next(wmax, std::vector<Rational>(n, Rational(0)));
            for (long m = 0; m < wmax; ++m)
                for (long h = 0; h < n; ++h) {
                    if (num[m][h] == 0) continue;
                    next[m][h] += Rational(k) * num[m][h];
                    if (m + 1 < wmax) next[m + 1][(h + 1) % n] += Rational(n) * num[m][h];
                }
            num = std::move(next);
        }
        HW den = hw_one(n, wmax);
        for (long k = 1; k <= d; ++k) {
            HW f(wmax, std::vector<Rational>(n, Rational(0)));
            Rational kp(k);  // k^{n-t}
            for (long t = n - 1; t >= 0; --t) {
                if (t < wmax) f[t][t % n] = rat_binomial(n, t) * kp;
                kp *= k;
            }
            // The t = n binomial term cancels against -(w/1)^n exactly.
            den = hw_mul(den, f, n);
        }
        HW term = hw_mul(num, hw_inverse(den, n), n);
        Rational sign = ((n * d) % 2 == 0) ? Rational(1) : Rational(-1);
        for (long m = 0; m < wmax; ++m) {
            for (long h = 0; h < n; ++h) {
                if (h == m % n) continue;
                if (term[m][h] != 0)
                    throw Error("i_function_kp: impure H-component at w^" +
                                std::to_string(m));
            }
            if (term[m][m % n] == 0) continue;
            CycNum c = I.plain[m].coeff(d);
            I.plain[m].set_coeff(d, c + CycNum(sign * term[m][m % n]));
        }
    }
    I.graded.resize(kmax + 1);
    for (long k = 0; k <= kmax; ++k)
        for (long j = 0; j <= k; ++j) I.graded[k].comps.push_back(I.plain[k - j]);
    return I;
}

IFunctionCnZn i_function_cnzn(long n, long xorder, long kmax) {
    IFunctionCnZn I;
    I.n = n;
    I.xorder = xorder;
    I.kmax = kmax;
    I.comps.assign(kmax + 1, QSeries('x', xorder));
    Rational sign_n = (n % 2 == 0) ? Rational(1) : Rational(-1);
    for (long k = 0; k < xorder; ++k) {
        // prod over b with <b> = <k/n>, 0 <= b < k/n of (1 + (-1)^n b^n Z),
        // Z standing for z^n; coefficient of Z^l lands at z-level k - n*l.
        std::vector<Rational> P = {Rational(1)};
        Rational frac(k % n, n);
        for (Rational b = frac; b * Rational(n) < Rational(k); b += 1) {
            if (b == 0) continue;  // factor is 1
            Rational bn(1);
            for (long t = 0; t < n; ++t) bn *= b;
            std::vector<Rational> Q(P.size() + 1, Rational(0));
            for (size_t e = 0; e < P.size(); ++e) {
                Q[e] += P[e];
                Q[e + 1] += sign_n * bn * P[e];
            }
            P = std::move(Q);
        }
        Rational invfact = Rational(1) / rat_factorial(k);
        for (size_t l = 0; l < P.size(); ++l) {
            long level = k - n * static_cast<long>(l);
            if (level < 0 || level > kmax) continue;
            if (P[l] == 0) continue;
            CycNum c = I.comps[level].coeff(k);
            I.comps[level].set_coeff(k, c + CycNum(P[l] * invfact));
        }
    }
    return I;
}

QSeries l_series(Target target, long n, long order) {
    Rational minus_n_pow(1);  // (-n)^n
    for (long t = 0; t < n; ++t) minus_n_pow *= Rational(-n);
    if (target == Target::KP) {
        QSeries u = QSeries::monomial('q', 1, CycNum(-minus_n_pow), order);
        return binomial_series(u, rat(-1, n));
    }
    // x (1 - (-1)^n (x/n)^n)^{-1/n}
    Rational c = (n % 2 == 0) ? Rational(-1) : Rational(1);
    Rational nn(1);
    for (long t = 0; t < n; ++t) nn *= Rational(n);
    QSeries u = QSeries::monomial('x', n, CycNum(c / nn), order);
    return binomial_series(u, rat(-1, n)).shifted(1).truncated(order);
}

namespace {

// DL/L computed directly from the series.
QSeries dlog_l_over_l(const QSeries& L) { return d_log(L) * L.inverse(); }

}  // namespace

std::vector<LogSeries> pf_residual_kp(long n, const std::vector<LogSeries>& comps,
                                      const QSeries& L) {
    QSeries factor = dlog_l_over_l(L);
    Rational nn1(1);
    for (long t = 0; t < n - 1; ++t) nn1 *= Rational(n);
    factor = CycNum(Rational(1) / nn1) * factor;
    QSeries Ln = L.pow(n);
    std::vector<LogSeries> res(comps.size());
    for (size_t k = 0; k < comps.size(); ++k) {
        std::vector<LogSeries> dpow = {comps[k]};
        for (long t = 1; t <= n; ++t) dpow.push_back(d_log(dpow.back()));
        LogSeries r = dpow[n];
        for (long kk = 0; kk < n; ++kk) {
            Rational sgn = ((n - kk) % 2 == 0) ? Rational(1) : Rational(-1);
            Rational nk(1);
            for (long t = 0; t < kk; ++t) nk *= Rational(n);
            QSeries scale = CycNum(-sgn * stirling_first(n, kk) * nk) * factor;
            r += scale * dpow[kk];
        }
        if (static_cast<long>(k) >= n) r -= Ln * comps[k - n];
        res[k] = r;
    }
    return res;
}

std::vector<QSeries> pf_residual_cnzn(long n, const std::vector<QSeries>& comps,
                                      const QSeries& L) {
    QSeries factor = dlog_l_over_l(L);
    QSeries Ln = L.pow(n);
    std::vector<QSeries> res(comps.size());
    for (size_t k = 0; k < comps.size(); ++k) {
        std::vector<QSeries> dpow = {comps[k]};
        for (long t = 1; t <= n; ++t) dpow.push_back(d_log(dpow.back()));
        QSeries r = dpow[n];
        for (long kk = 1; kk < n; ++kk)
            r += CycNum(stirling_first(n, kk)) * (factor * dpow[kk]);
        if (static_cast<long>(k) >= n) r -= Ln * comps[k - n];
        res[k] = r;
    }
    return res;
}

QSeries mirror_map(long n, long order) {
    return i_function_kp(n, order, 1).plain[1];
}

QSeries mirror_map_inverse(long n, long order) {
    QSeries Qq = QSeries::monomial('q', 1, CycNum(1L), order) *
                 series_exp(mirror_map(n, order));
    return revert(Qq.truncated(order));
}

namespace {

std::mutex h_mutex;
std::map<std::tuple<long, long, long, bool>, LPoly> h_cache;

LPoly x_ddx(const LPoly& p) {
    LPoly r;
    for (const auto& [e, c] : p.coeffs())
        if (e != 0) r.set_coeff(e, CycNum(Rational(e)) * c);
    return r;
}

LPoly h_poly_impl(long n, long m, long j, bool orb) {
    if (j < 0 || j > m) return LPoly();
    if (m == 0) return j == 0 ? LPoly::one() : LPoly();
    auto key = std::make_tuple(n, m, j, orb);
    {
        std::lock_guard<std::mutex> lock(h_mutex);
        auto it = h_cache.find(key);
        if (it != h_cache.end()) return it->second;
    }
    LPoly prev = h_poly_impl(n, m - 1, j, orb);
    LPoly lower = h_poly_impl(n, m - 1, j - 1, orb);
    LPoly inner = x_ddx(lower) + CycNum(rat(m - j, n)) * lower;
    LPoly weight;
    if (orb) {
        // n (1 + (-1)^n X / n^n)
        Rational nn(1);
        for (long t = 0; t < n; ++t) nn *= Rational(n);
        Rational s = (n % 2 == 0) ? Rational(1) : Rational(-1);
        weight = LPoly(CycNum(Rational(n))) + LPoly::monomial(1, CycNum(Rational(n) * s / nn));
    } else {
        weight = LPoly::monomial(1, CycNum(1L)) - LPoly::one();
    }
    LPoly result = prev + weight * inner;
    std::lock_guard<std::mutex> lock(h_mutex);
    h_cache.emplace(key, result);
    return result;
}

}  // namespace

LPoly h_poly(long n, long m, long j) { return h_poly_impl(n, m, j, false); }
LPoly h_poly_orb(long n, long m, long j) { return h_poly_impl(n, m, j, true); }

LPoly dx_of_x(Target target, long n) {
    if (target == Target::KP) {
        // D X = n X Y = X(X-1)
        return LPoly::monomial(2, CycNum(1L)) - LPoly::monomial(1, CycNum(1L));
    }
    // D X = n X (1 + (-1)^n X / n^n)
    Rational nn(1);
    for (long t = 0; t < n; ++t) nn *= Rational(n);
    Rational s = (n % 2 == 0) ? Rational(1) : Rational(-1);
    return LPoly::monomial(1, CycNum(Rational(n))) +
           LPoly::monomial(2, CycNum(Rational(n) * s / nn));
}

DiffOp l_jk_operator_x(Target target, long n, long k) {
    DiffOp op;
    bool orb = (target == Target::CnZn);
    Rational nn(1);
    for (long t = 0; t < n; ++t) nn *= Rational(n);
    LPoly dll;  // DL/L as polynomial in X
    if (orb)
        dll = LPoly::one() + LPoly::monomial(1, CycNum(((n % 2 == 0) ? Rational(1)
                                                                    : Rational(-1)) /
                                                       nn));
    else
        dll = CycNum(rat(1, n)) *
              (LPoly::monomial(1, CycNum(1L)) - LPoly::one());
    for (long i = 0; i <= k; ++i) {
        LPoly c = CycNum(rat_binomial(n, i)) *
                  (orb ? h_poly_orb(n, n - i, k - i) : h_poly(n, n - i, k - i));
        LPoly corr;
        for (long r = 1; r <= k - i; ++r) {
            LPoly h = orb ? h_poly_orb(n, n - i - r, k - i - r)
                          : h_poly(n, n - i - r, k - i - r);
            if (h.is_zero()) continue;
            Rational w = rat_binomial(n - r, i) * stirling_first(n, n - r);
            if (!orb) {
                Rational nr(1);
                for (long t = 0; t < n - r; ++t) nr *= Rational(n);
                w *= nr;
                if (r % 2 == 1) w = -w;
            }
            corr += CycNum(w) * h;
        }
        if (!corr.is_zero()) {
            LPoly scaled = dll * corr;
            if (!orb) {
                Rational nn1(1);
                for (long t = 0; t < n - 1; ++t) nn1 *= Rational(n);
                scaled = CycNum(Rational(1) / nn1) * scaled;
                c -= scaled;
            } else {
                c += scaled;
            }
        }
        op.set_coeff(i, c);
    }
    return op;
}

DiffOp l_jk_operator(Target target, long n, long k) {
    DiffOp x = l_jk_operator_x(target, n, k);
    DiffOp r;
    for (long i = 0; i <= x.order(); ++i) r.set_coeff(i, x.coeff(i).stretch_var(n));
    return r;
}

bool verify_mod_ideal(long n, long k, const Rational& y_shift) {
    DiffOp lhs = l_jk_operator_x(Target::KP, n, k);
    LPoly Y = CycNum(rat(1, n)) *
                  (LPoly::monomial(1, CycNum(1L)) - LPoly::one()) +
              LPoly(CycNum(y_shift));
    LPoly dx = dx_of_x(Target::KP, n);
    DiffOp rhs;
    rhs.set_coeff(0, LPoly::one());
    for (long t = 0; t < k; ++t) {
        DiffOp factor;
        factor.set_coeff(0, CycNum(Rational(-t)) * Y);
        factor.set_coeff(1, LPoly::one());
        // Left-to-right: D (D - Y) ... ; prepend factor acting last? The
        // product is ordered with D acting first on the right; compose as
        // factor_t applied after the accumulated tail.
        rhs = rhs.compose(factor, dx);
    }
    DiffOp scaled;
    for (long i = 0; i <= rhs.order(); ++i)
        scaled.set_coeff(i, CycNum(rat_binomial(n, k)) * rhs.coeff(i));
    LPoly modulus = LPoly::monomial(2, CycNum(1L)) - LPoly::monomial(1, CycNum(1L));
    return lhs.reduced(modulus) == scaled.reduced(modulus);
}

bool operator_comparison_under_change(long n, long k, bool sign_flip) {
    DiffOp kp = l_jk_operator_x(Target::KP, n, k);
    DiffOp orb = l_jk_operator_x(Target::CnZn, n, k);
    Rational nn(1);
    for (long t = 0; t < n; ++t) nn *= Rational(n);
    Rational s = ((n + 1) % 2 == 0) ? Rational(1) / nn : Rational(-1) / nn;
    // X = s X'; D = -(1/n) D'.
    DiffOp transformed;
    for (long i = 0; i <= kp.order(); ++i) {
        Rational di(1);
        for (long t = 0; t < i; ++t) di *= rat(-1, n);
        transformed.set_coeff(i, CycNum(di) * kp.coeff(i).scale_var(CycNum(s)));
    }
    Rational target_scale(1);
    for (long t = 0; t < k; ++t) target_scale *= rat(-1, n);
    if (sign_flip) target_scale = -target_scale;
    DiffOp expected;
    for (long i = 0; i <= orb.order(); ++i)
        expected.set_coeff(i, CycNum(target_scale) * orb.coeff(i));
    return transformed == expected;
}

std::vector<QSeries> l_decomposition_residual(Target target, long n, long j,
                                              const QSeries& test,
                                              const QSeries& L) {
    bool orb = (target == Target::CnZn);
    CycNum zj = cyc_root_of_unity(n, j);
    QSeries Lj = zj * L;
    QSeries dll = dlog_l_over_l(L);
    auto apply_dlj = [&](const std::vector<QSeries>& v) {
        std::vector<QSeries> r(v.size() + 1, QSeries(test.var(), test.trunc()));
        for (size_t t = 0; t < v.size(); ++t) {
            r[t] += d_log(v[t]);
            r[t + 1] += Lj * v[t];
        }
        return r;
    };
    std::vector<std::vector<QSeries>> dpow = {{test}};
    for (long t = 1; t <= n; ++t) dpow.push_back(apply_dlj(dpow.back()));
    // LHS by w-level.
    std::vector<QSeries> lhs(n + 1, QSeries(test.var(), test.trunc()));
    for (long t = 0; t <= n; ++t) lhs[t] += dpow[n][t];
    lhs[n] -= Lj.pow(n) * test;
    for (long kk = orb ? 1 : 0; kk < n; ++kk) {
        Rational w = stirling_first(n, kk);
        if (!orb) {
            Rational nk(1);
            for (long t = 0; t < kk; ++t) nk *= Rational(n);
            Rational nn1(1);
            for (long t = 0; t < n - 1; ++t) nn1 *= Rational(n);
            w *= nk / nn1;
            if ((n - kk) % 2 == 1) w = -w;
            w = -w;  // operator subtracts this sum
        }
        for (long t = 0; t <= std::min(kk, n); ++t)
            lhs[t] += CycNum(w) * (dll * dpow[kk][t]);
    }
    // RHS: sum_k (w L_j)^{n-k} ladder_k(test).
    std::vector<QSeries> rhs(n + 1, QSeries(test.var(), test.trunc()));
    for (long kk = 1; kk <= n; ++kk) {
        QSeries applied = l_jk_operator(target, n, kk).apply(test, L);
        rhs[n - kk] += Lj.pow(n - kk) * applied;
    }
    std::vector<QSeries> res(n + 1, QSeries(test.var(), test.trunc()));
    for (long t = 0; t <= n; ++t) res[t] = lhs[t] - rhs[t];
    return res;
}

QSeries ladder_step(Target target, long n, const std::vector<QSeries>& prev,
                    long j, const CycNum& origin, const QSeries& L) {
    long k = static_cast<long>(prev.size());
    if (k == 0) throw Error("ladder_step: need level 0");
    char var = L.var();
    QSeries rhs(var, L.trunc());
    CycNum zj = cyc_root_of_unity(n, j);
    QSeries Linv = L.inverse();
    for (long r = 2; r <= n; ++r) {
        long idx = k + 1 - r;
        if (idx < 0) continue;
        QSeries applied = l_jk_operator(target, n, r).apply(prev[idx], L);
        rhs -= zj.pow(1 - r) * (Linv.pow(r - 1) * applied);
    }
    rhs = CycNum(rat(1, n)) * rhs;
    if (!rhs.is_zero() && rhs.order() < 0)
        throw DivisibilityViolation("ladder RHS has negative exponents");
    QSeries integrated;
    try {
        integrated = d_log_inverse(rhs);
    } catch (const NonzeroConstantTerm&) {
        throw ConstantMismatch("ladder RHS has nonzero constant term");
    }
    return integrated + QSeries::constant(var, origin, integrated.trunc());
}

std::vector<LPoly> phi_asymptotic(long n, long kmax, long order) {
    QSeries L = l_series(Target::KP, n, order);
    std::vector<QSeries> levels = {QSeries::one('q', order)};
    std::vector<LPoly> out = {LPoly::one()};
    for (long k = 1; k <= kmax; ++k) {
        QSeries pk = ladder_step(Target::KP, n, levels, 0, CycNum(), L);
        levels.push_back(pk);
        LPoly fit;
        bool ok = false;
        for (long deg = n; deg <= 4 * n * k && !ok; deg += n) {
            try {
                fit = fit_lpoly(pk, L, deg);
                ok = true;
            } catch (const NoPolynomialFit&) {
            }
        }
        if (!ok) throw NoPolynomialFit("phi_asymptotic level " + std::to_string(k));
        out.push_back(fit);
    }
    return out;
}

}  // namespace gwcrc
