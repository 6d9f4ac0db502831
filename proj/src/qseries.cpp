#include "gwcrc/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace gwcrc {

void QSeries::normalize() {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->second.is_zero())
            it = coeffs_.erase(it);
        else
            ++it;
    }
    if (!coeffs_.empty()) lowest_ = std::min(lowest_, coeffs_.begin()->first);
}

QSeries QSeries::constant(char var, const CycNum& c, long trunc) {
    return monomial(var, 0, c, trunc);
}

QSeries QSeries::monomial(char var, long exp, const CycNum& c, long trunc) {
    QSeries s(var, trunc);
    s.lowest_ = std::min(exp, trunc);
    if (exp < trunc && !c.is_zero()) s.coeffs_[exp] = c;
    return s;
}

CycNum QSeries::coeff(long e) const {
    if (e >= trunc_)
        throw Error("QSeries: coefficient at exponent " + std::to_string(e) +
                    " beyond truncation " + std::to_string(trunc_));
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? CycNum() : it->second;
}

void QSeries::set_coeff(long e, const CycNum& c) {
    if (e >= trunc_) throw Error("QSeries: set_coeff beyond truncation");
    if (c.is_zero())
        coeffs_.erase(e);
    else
        coeffs_[e] = c;
    lowest_ = std::min(lowest_, e);
}

QSeries QSeries::truncated(long new_trunc) const {
    QSeries r(var_, std::min(trunc_, new_trunc));
    r.lowest_ = std::min(lowest_, r.trunc_);
    for (const auto& [e, c] : coeffs_)
        if (e < r.trunc_) r.coeffs_[e] = c;
    return r;
}

QSeries QSeries::shifted(long dexp) const {
    QSeries r(var_, trunc_ + dexp);
    r.lowest_ = lowest_ + dexp;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e + dexp] = c;
    return r;
}

QSeries QSeries::with_var(char v) const {
    QSeries r = *this;
    r.var_ = v;
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (var_ != o.var_) throw Error("QSeries: variable mismatch in +");
    trunc_ = std::min(trunc_, o.trunc_);
    lowest_ = std::min(lowest_, o.lowest_);
    for (const auto& [e, c] : o.coeffs_) {
        if (e >= trunc_) continue;
        auto it = coeffs_.find(e);
        if (it == coeffs_.end())
            coeffs_[e] = c;
        else
            it->second += c;
    }
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first >= trunc_ || it->second.is_zero())
            it = coeffs_.erase(it);
        else
            ++it;
    }
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.var_ != b.var_) throw Error("QSeries: variable mismatch in *");
    // Product coefficients are complete below min(a.trunc + b.lowest,
    // b.trunc + a.lowest).
    QSeries r(a.var_, std::min(a.trunc_ + b.lowest_, b.trunc_ + a.lowest_));
    r.lowest_ = std::min(a.lowest_ + b.lowest_, r.trunc_);
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) {
            long e = ea + eb;
            if (e >= r.trunc_) continue;
            auto it = r.coeffs_.find(e);
            if (it == r.coeffs_.end())
                r.coeffs_[e] = ca * cb;
            else
                it->second += ca * cb;
        }
    r.normalize();
    return r;
}

QSeries operator*(const CycNum& c, QSeries s) {
    for (auto& [e, v] : s.coeffs_) v = c * v;
    s.normalize();
    return s;
}

QSeries QSeries::inverse() const {
    if (coeffs_.empty()) throw Error("QSeries: inverse of zero series");
    long v = coeffs_.begin()->first;
    // f = t^v g with g a unit; invert g by the standard recursion.
    long gn = trunc_ - v;  // validity of g as a power series from 0
    CycNum g0 = coeffs_.begin()->second;
    CycNum g0inv = g0.inverse();
    QSeries inv(var_, gn);
    inv.lowest_ = 0;
    std::map<long, CycNum> g;  // g normalized to start at 0
    for (const auto& [e, c] : coeffs_) g[e - v] = c;
    std::map<long, CycNum> h;  // h = 1/g
    h[0] = g0inv;
    for (long m = 1; m < gn; ++m) {
        CycNum acc;
        for (const auto& [e, c] : g) {
            if (e == 0 || e > m) continue;
            auto it = h.find(m - e);
            if (it != h.end()) acc += c * it->second;
        }
        CycNum val = -(g0inv * acc);
        if (!val.is_zero()) h[m] = val;
    }
    for (const auto& [e, c] : h) inv.coeffs_[e] = c;
    inv.normalize();
    return inv.shifted(-v);
}

QSeries QSeries::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    QSeries acc = QSeries::one(var_, trunc_);
    for (long i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

QSeries d_log(const QSeries& s) {
    QSeries r(s.var(), s.trunc());
    for (const auto& [e, c] : s.coeffs()) {
        if (e == 0) continue;
        r.set_coeff(e, CycNum(Rational(e)) * c);
    }
    return r;
}

QSeries d_log_inverse(const QSeries& s) {
    if (s.trunc() > 0 && !s.coeff(0).is_zero())
        throw NonzeroConstantTerm("d_log_inverse requires zero constant term");
    QSeries r(s.var(), s.trunc());
    for (const auto& [e, c] : s.coeffs()) {
        if (e == 0)
            throw NonzeroConstantTerm("d_log_inverse requires zero constant term");
        r.set_coeff(e, CycNum(rat(1, e)) * c);
    }
    return r;
}

QSeries series_exp(const QSeries& s) {
    if (s.trunc() > 0 && !s.coeff(0).is_zero())
        throw BadConstantTerm("series_exp requires zero constant term");
    if (!s.is_zero() && s.order() <= 0)
        throw BadConstantTerm("series_exp requires positive order");
    QSeries r = QSeries::one(s.var(), s.trunc());
    QSeries term = QSeries::one(s.var(), s.trunc());
    long v = s.is_zero() ? std::max(s.trunc(), 1L) : s.order();
    long kmax = v > 0 ? (s.trunc() / v + 1) : 1;
    Rational fact(1);
    for (long k = 1; k <= kmax; ++k) {
        term = term * s;
        if (term.is_zero()) break;
        fact *= k;
        r += CycNum(Rational(1) / fact) * term;
    }
    return r;
}

QSeries series_log(const QSeries& s) {
    if (s.trunc() <= 0 || s.coeff(0) != CycNum(1L))
        throw BadConstantTerm("series_log requires constant term 1");
    QSeries u = s - QSeries::one(s.var(), s.trunc());
    QSeries r(s.var(), s.trunc());
    if (u.is_zero()) return r;
    QSeries term = QSeries::one(s.var(), s.trunc());
    long v = u.order();
    long kmax = v > 0 ? (s.trunc() / v + 1) : 1;
    for (long k = 1; k <= kmax; ++k) {
        term = term * u;
        if (term.is_zero()) break;
        Rational sign = (k % 2 == 1) ? rat(1, k) : rat(-1, k);
        r += CycNum(sign) * term;
    }
    return r;
}

QSeries binomial_series(const QSeries& u, const Rational& alpha) {
    if (!u.is_zero() && u.order() <= 0)
        throw BadConstantTerm("binomial_series requires order >= 1");
    QSeries r = QSeries::one(u.var(), u.trunc());
    QSeries term = QSeries::one(u.var(), u.trunc());
    long v = u.is_zero() ? std::max(u.trunc(), 1L) : u.order();
    long kmax = v > 0 ? (u.trunc() / v + 1) : 1;
    Rational coef(1);
    for (long k = 1; k <= kmax; ++k) {
        term = term * u;
        if (term.is_zero()) break;
        coef *= (alpha - Rational(k - 1)) / Rational(k);
        r += CycNum(coef) * term;
    }
    return r;
}

QSeries compose(const QSeries& f, const QSeries& g) {
    if (!g.is_zero() && g.order() <= 0)
        throw BadConstantTerm("compose requires inner order >= 1");
    if (f.lowest() < 0) throw Error("compose: negative powers unsupported");
    QSeries r(g.var(), std::min(f.trunc(), g.trunc()));
    QSeries gpow = QSeries::one(g.var(), r.trunc());
    long prev = 0;
    for (const auto& [e, c] : f.coeffs()) {
        if (e >= r.trunc()) break;
        for (long i = prev; i < e; ++i) gpow = gpow * g.truncated(r.trunc());
        prev = e;
        r += c * gpow;
    }
    return r;
}

QSeries revert(const QSeries& w) {
    if (w.is_zero() || w.order() != 1 || w.coeff(1) != CycNum(1L))
        throw Error("revert requires w = t + O(t^2)");
    long N = w.trunc();
    // Newton-style fixed point: t = w - (w(t)-first term adjustments), done
    // order by order. Iterate t_{m+1} = t_m - (w(t_m) - id).
    QSeries t = QSeries::monomial(w.var(), 1, CycNum(1L), N);
    QSeries id = t;
    for (long iter = 0; iter < N + 2; ++iter) {
        QSeries err = compose(w, t) - id;
        if (err.is_zero()) break;
        t -= err;
    }
    QSeries check = compose(w, t) - id;
    if (!check.is_zero()) throw Error("revert: failed to converge");
    return t;
}

std::string QSeries::to_string() const {
    std::ostringstream os;
    os << "O(" << var_ << "^" << trunc_ << ")";
    std::string head;
    for (const auto& [e, c] : coeffs_) {
        head += c.to_string() + "*" + var_ + "^" + std::to_string(e) + " + ";
    }
    return head + os.str();
}

}  // namespace gwcrc
