#pragma once

#include <map>

#include "gwcrc/cyclotomic.hpp"
#include "gwcrc/errors.hpp"

namespace gwcrc {

// Truncated formal Laurent series in one variable over CycNum.
// Coefficients are known exactly for exponents in [lowest, trunc);
// operations track validity honestly and never extrapolate.
class QSeries {
  public:
    QSeries() : var_('q'), lowest_(0), trunc_(0) {}
    // Zero series known to the given truncation.
    QSeries(char var, long trunc) : var_(var), lowest_(trunc), trunc_(trunc) {}

    static QSeries constant(char var, const CycNum& c, long trunc);
    static QSeries monomial(char var, long exp, const CycNum& c, long trunc);
    static QSeries one(char var, long trunc) {
        return constant(var, CycNum(1L), trunc);
    }

    char var() const { return var_; }
    long lowest() const { return lowest_; }
    long trunc() const { return trunc_; }
    const std::map<long, CycNum>& coeffs() const { return coeffs_; }

    bool is_zero() const { return coeffs_.empty(); }
    // Exponent of first nonzero coefficient; trunc() when zero.
    long order() const { return coeffs_.empty() ? trunc_ : coeffs_.begin()->first; }

    // Coefficient of var^e; throws if e >= trunc (unknown coefficient).
    CycNum coeff(long e) const;
    void set_coeff(long e, const CycNum& c);

    QSeries truncated(long new_trunc) const;
    QSeries shifted(long dexp) const;  // multiply by var^dexp
    QSeries with_var(char v) const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const CycNum& c, QSeries s);
    QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

    // Multiplicative inverse; if the series is var^v * (unit), the result
    // carries trunc reduced by 2v.
    QSeries inverse() const;
    friend QSeries operator/(const QSeries& a, const QSeries& b) {
        return a * b.inverse();
    }
    QSeries pow(long e) const;

    // True when every known coefficient is zero (residual check).
    bool known_zero() const { return coeffs_.empty(); }

    std::string to_string() const;

  private:
    void normalize();

    char var_;
    long lowest_;
    long trunc_;
    std::map<long, CycNum> coeffs_;
};

// D = t d/dt.
QSeries d_log(const QSeries& s);
// Inverse of D on series with zero constant term.
QSeries d_log_inverse(const QSeries& s);

QSeries series_exp(const QSeries& s);
QSeries series_log(const QSeries& s);

// (1 + u)^alpha for rational alpha; u must have order >= 1.
QSeries binomial_series(const QSeries& u, const Rational& alpha);

// f(g) where g has order >= 1 and both share a variable interpretation;
// the result is a series in g's variable.
QSeries compose(const QSeries& f, const QSeries& g);

// Series reversion: given w = t * unit(t), find t(w) with w(t(w)) = w.
QSeries revert(const QSeries& w);

}  // namespace gwcrc
