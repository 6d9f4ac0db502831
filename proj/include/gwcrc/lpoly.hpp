#pragma once

#include <map>
#include <vector>

#include "gwcrc/qseries.hpp"

namespace gwcrc {

// Laurent polynomial in one symbol (usually L, sometimes X = L^n) over CycNum.
class LPoly {
  public:
    LPoly() = default;
    explicit LPoly(const CycNum& c) {
        if (!c.is_zero()) coeffs_[0] = c;
    }
    static LPoly monomial(long exp, const CycNum& c) {
        LPoly p;
        if (!c.is_zero()) p.coeffs_[exp] = c;
        return p;
    }
    static LPoly one() { return LPoly(CycNum(1L)); }

    const std::map<long, CycNum>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    CycNum coeff(long e) const {
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? CycNum() : it->second;
    }
    void set_coeff(long e, const CycNum& c) {
        if (c.is_zero())
            coeffs_.erase(e);
        else
            coeffs_[e] = c;
    }
    long min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
    long max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    LPoly operator-() const;
    LPoly& operator+=(const LPoly& o);
    LPoly& operator-=(const LPoly& o);
    friend LPoly operator+(LPoly a, const LPoly& b) { return a += b; }
    friend LPoly operator-(LPoly a, const LPoly& b) { return a -= b; }
    friend LPoly operator*(const LPoly& a, const LPoly& b);
    friend LPoly operator*(const CycNum& c, LPoly p);
    LPoly& operator*=(const LPoly& o) { return *this = *this * o; }

    bool operator==(const LPoly& o) const { return coeffs_ == o.coeffs_; }
    bool operator!=(const LPoly& o) const { return !(*this == o); }

    // Formal d/dL.
    LPoly derivative() const;
    // Substitute the variable by c * variable (exponent-wise scaling).
    LPoly scale_var(const CycNum& c) const;
    // Substitute variable -> variable^m (m >= 1).
    LPoly stretch_var(long m) const;
    // Evaluate at a scalar (L = value), value invertible for negative exps.
    CycNum eval(const CycNum& value) const;
    // Constant term in the variable (coefficient of exponent 0).
    CycNum constant_term() const { return coeff(0); }

    std::string to_string(const std::string& sym = "L") const;

  private:
    std::map<long, CycNum> coeffs_;
};

// Substitute a series for the variable; Lval must be invertible when p has
// negative exponents.
QSeries lpoly_eval_series(const LPoly& p, const QSeries& Lval);

// Exact reconstruction: find p supported on exponents [min_deg, max_deg] with
// lpoly_eval_series(p, Lval) = s through order trunc(s). The last `guard`
// orders are verified rather than fitted. Throws NoPolynomialFit.
LPoly fit_lpoly(const QSeries& s, const QSeries& Lval, long max_deg,
                long guard = 5, long min_deg = 0);

// Remainder of p modulo the monic polynomial modulus (non-negative support).
LPoly lpoly_mod(const LPoly& p, const LPoly& modulus);

// Differential operator sum_i c_i(variable) * D^i with LPoly coefficients.
// The action of D on the coefficient ring is a derivation fixed by the image
// of the variable (dvar = D(variable) as an LPoly).
class DiffOp {
  public:
    DiffOp() = default;
    explicit DiffOp(std::vector<LPoly> c) : c_(std::move(c)) { trim(); }

    long order() const { return static_cast<long>(c_.size()) - 1; }
    const LPoly& coeff(long i) const {
        static const LPoly zero;
        return (i >= 0 && i < static_cast<long>(c_.size())) ? c_[i] : zero;
    }
    void set_coeff(long i, const LPoly& p);
    bool is_zero() const { return c_.empty(); }

    DiffOp& operator+=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    DiffOp operator-() const;
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a += -b; }
    friend DiffOp operator*(const LPoly& p, DiffOp op);  // left multiply

    bool operator==(const DiffOp& o) const { return c_ == o.c_; }

    // Operator composition: (this ∘ other), with D acting on coefficients via
    // the derivation determined by dvar.
    DiffOp compose(const DiffOp& other, const LPoly& dvar) const;

    // Apply to a QSeries, substituting Lval for the variable in coefficients;
    // D on series is d_log.
    QSeries apply(const QSeries& s, const QSeries& Lval) const;

    // Reduce every coefficient modulo `modulus`.
    DiffOp reduced(const LPoly& modulus) const;

  private:
    void trim();
    std::vector<LPoly> c_;
};

// The derivation step: D(p) for LPoly p given D(variable) = dvar.
LPoly lpoly_d(const LPoly& p, const LPoly& dvar);

}  // namespace gwcrc
