#include "gwcrc/lgmirror.hpp"

#include <algorithm>

#include "gwcrc/hypergeom.hpp"

namespace gwcrc {

namespace {

QSeries prod_w(long n, const std::vector<QSeries>& w) {
    QSeries p = QSeries::one(w[0].var(), w[0].trunc());
    for (long i = 0; i < n; ++i) p *= w[i];
    return p;
}

}  // namespace

QSeries constraint_residual(long n, const std::vector<QSeries>& w) {
    char v = w[0].var();
    long t = w[0].trunc();
    QSeries q = QSeries::monomial(v, 1, CycNum(1L), t);
    return prod_w(n, w) - q * w[n].pow(n);
}

CriticalData critical_point(long n, long order) {
    QSeries L = l_series(Target::KP, n, order);
    CriticalData cd;
    cd.n = n;
    for (long i = 0; i < n; ++i)
        cd.w.push_back(L - QSeries::constant(L.var(), cyc_root_of_unity(n, i),
                                             L.trunc()));
    cd.w.push_back(CycNum(Rational(-n)) * L);
    QSeries q = QSeries::monomial(L.var(), 1, CycNum(1L), L.trunc());
    QSeries wprod = prod_w(n, cd.w);
    // rationalized critical equations, one per coordinate
    for (long i = 0; i < n; ++i) {
        QSeries lhs = cd.w[i] + QSeries::constant(L.var(),
                                                  cyc_root_of_unity(n, i),
                                                  L.trunc());
        QSeries res = q * (CycNum(Rational(-n)) * lhs).pow(n) - wprod;
        if (!res.known_zero())
            throw ResidualNonzero("critical equation " + std::to_string(i));
    }
    if (!constraint_residual(n, cd.w).known_zero())
        throw ResidualNonzero("critical constraint");
    return cd;
}

QSeries critical_value_derivative(long n, long order) {
    QSeries L = l_series(Target::KP, n, order + 2);
    QSeries dl = d_log(L);
    QSeries acc(L.var(), L.trunc());
    for (long i = 0; i < n; ++i) {
        CycNum chi = cyc_root_of_unity(n, i);
        QSeries denom = L - QSeries::constant(L.var(), chi, L.trunc());
        acc += (chi * dl) * denom.inverse();
    }
    QSeries res = acc - L;
    if (!res.truncated(order).known_zero())
        throw ResidualNonzero("critical value derivative != L");
    // log-extended potential: mu_0 = D^{-1}(L - 1) + log q, so D mu_0 = L
    LogSeries mu;
    mu.comps.push_back(d_log_inverse(L - QSeries::one(L.var(), L.trunc())));
    mu.comps.push_back(QSeries::one(L.var(), L.trunc()));
    LogSeries dmu = d_log(mu);
    if (!(dmu.comp(0) - L).truncated(order).known_zero() ||
        !dmu.comp(1).is_zero())
        throw ResidualNonzero("log-extended derivative != L");
    return acc.truncated(order);
}

QSeries hessian_det_of(long n, const std::vector<QSeries>& w) {
    char v = w[0].var();
    long t = w[0].trunc();
    CycNum nn2(rat(1, n * n));
    std::vector<std::vector<QSeries>> H(n, std::vector<QSeries>(n));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            H[i][j] = nn2 * w[n];
            if (i == j) H[i][j] += w[j];
        }
    // Leibniz expansion; n <= 5 in practice so this stays small
    std::vector<long> perm(n);
    for (long i = 0; i < n; ++i) perm[i] = i;
    QSeries det(v, t);
    do {
        long inv = 0;
        for (long a = 0; a < n; ++a)
            for (long b = a + 1; b < n; ++b)
                if (perm[a] > perm[b]) ++inv;
        QSeries term = QSeries::one(v, t);
        for (long i = 0; i < n; ++i) term *= H[i][perm[i]];
        det += (inv % 2) ? -term : term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

QSeries hessian_det(long n, long order) {
    CriticalData cd = critical_point(n, order);
    QSeries det = hessian_det_of(n, cd.w);
    if (!(det + QSeries::one(det.var(), det.trunc())).known_zero())
        throw ResidualNonzero("Hessian determinant != -1");
    return det;
}

}  // namespace gwcrc
