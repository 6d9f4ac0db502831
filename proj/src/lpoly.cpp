#include "gwcrc/lpoly.hpp"

#include <sstream>

namespace gwcrc {

LPoly LPoly::operator-() const {
    LPoly r = *this;
    for (auto& [e, c] : r.coeffs_) c = -c;
    return r;
}

LPoly& LPoly::operator+=(const LPoly& o) {
    for (const auto& [e, c] : o.coeffs_) {
        auto it = coeffs_.find(e);
        if (it == coeffs_.end()) {
            coeffs_[e] = c;
        } else {
            it->second += c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }
    return *this;
}

LPoly& LPoly::operator-=(const LPoly& o) { return *this += -o; }

LPoly operator*(const LPoly& a, const LPoly& b) {
    LPoly r;
    for (const auto& [ea, ca] : a.coeffs_)
        for (const auto& [eb, cb] : b.coeffs_) {
            auto it = r.coeffs_.find(ea + eb);
            if (it == r.coeffs_.end())
                r.coeffs_[ea + eb] = ca * cb;
            else
                it->second += ca * cb;
        }
    for (auto it = r.coeffs_.begin(); it != r.coeffs_.end();)
        it = it->second.is_zero() ? r.coeffs_.erase(it) : std::next(it);
    return r;
}

LPoly operator*(const CycNum& c, LPoly p) {
    if (c.is_zero()) return LPoly();
    for (auto& [e, v] : p.coeffs_) v = c * v;
    return p;
}

LPoly LPoly::derivative() const {
    LPoly r;
    for (const auto& [e, c] : coeffs_) {
        if (e == 0) continue;
        r.coeffs_[e - 1] = CycNum(Rational(e)) * c;
    }
    return r;
}

LPoly LPoly::scale_var(const CycNum& s) const {
    LPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e] = s.pow(e) * c;
    return r;
}

LPoly LPoly::stretch_var(long m) const {
    LPoly r;
    for (const auto& [e, c] : coeffs_) r.coeffs_[e * m] = c;
    return r;
}

CycNum LPoly::eval(const CycNum& value) const {
    CycNum acc;
    for (const auto& [e, c] : coeffs_) acc += c * value.pow(e);
    return acc;
}

std::string LPoly::to_string(const std::string& sym) const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        if (e != 0) os << "*" << sym << "^" << e;
    }
    return os.str();
}

QSeries lpoly_eval_series(const LPoly& p, const QSeries& Lval) {
    if (!p.coeffs().empty() && p.min_exp() < 0 && Lval.is_zero())
        throw NonInvertibleL("negative exponent with zero L value");
    QSeries r(Lval.var(), Lval.trunc());
    if (p.is_zero()) return r;
    QSeries Linv;
    bool have_inv = false;
    for (const auto& [e, c] : p.coeffs()) {
        QSeries pw;
        if (e >= 0) {
            pw = Lval.pow(e);
        } else {
            if (!have_inv) {
                if (Lval.is_zero())
                    throw NonInvertibleL("zero L value");
                Linv = Lval.inverse();
                have_inv = true;
            }
            pw = Linv.pow(-e);
        }
        r += c * pw;
    }
    return r;
}

LPoly fit_lpoly(const QSeries& s, const QSeries& Lval, long max_deg, long guard,
                long min_deg) {
    // Columns: Lval^e for e in [min_deg, max_deg]. Rows: series orders from
    // lowest to trunc - guard (fit), the final guard orders verify.
    long ncols = max_deg - min_deg + 1;
    if (ncols <= 0) throw NoPolynomialFit("empty degree window");
    std::vector<QSeries> cols;
    cols.reserve(ncols);
    QSeries Linv = (min_deg < 0) ? Lval.inverse() : QSeries();
    for (long e = min_deg; e <= max_deg; ++e)
        cols.push_back(e >= 0 ? Lval.pow(e) : Linv.pow(-e));
    long lo = std::min(s.lowest(), cols.front().lowest());
    for (const auto& c : cols) lo = std::min(lo, c.lowest());
    long hi = s.trunc();
    for (const auto& c : cols) hi = std::min(hi, c.trunc());
    long fit_hi = hi - guard;
    if (fit_hi <= lo) throw NoPolynomialFit("not enough orders for fit window");

    long nrows = fit_hi - lo;
    // Dense Gaussian elimination over the cyclotomic field.
    std::vector<std::vector<CycNum>> M(nrows, std::vector<CycNum>(ncols + 1));
    for (long r = 0; r < nrows; ++r) {
        for (long c = 0; c < ncols; ++c) M[r][c] = cols[c].coeff(lo + r);
        M[r][ncols] = s.coeff(lo + r);
    }
    std::vector<long> pivot_col;
    long row = 0;
    for (long col = 0; col < ncols && row < nrows; ++col) {
        long pr = -1;
        for (long r = row; r < nrows; ++r)
            if (!M[r][col].is_zero()) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        CycNum inv = M[row][col].inverse();
        for (long c = col; c <= ncols; ++c) M[row][c] = inv * M[row][c];
        for (long r = 0; r < nrows; ++r) {
            if (r == row || M[r][col].is_zero()) continue;
            CycNum f = M[r][col];
            for (long c = col; c <= ncols; ++c) M[r][c] -= f * M[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    // Inconsistent system => no fit.
    for (long r = row; r < nrows; ++r)
        if (!M[r][ncols].is_zero())
            throw NoPolynomialFit("inconsistent linear system");
    std::vector<CycNum> sol(ncols);
    for (size_t r = 0; r < pivot_col.size(); ++r) sol[pivot_col[r]] = M[r][ncols];
    LPoly p;
    for (long c = 0; c < ncols; ++c) p.set_coeff(min_deg + c, sol[c]);
    // Verification on the full window including guard orders.
    QSeries resid = lpoly_eval_series(p, Lval).truncated(hi) - s.truncated(hi);
    if (!resid.is_zero()) throw NoPolynomialFit("guard orders mismatch");
    return p;
}

LPoly lpoly_mod(const LPoly& p, const LPoly& modulus) {
    if (modulus.is_zero()) throw Error("lpoly_mod: zero modulus");
    if (p.min_exp() < 0 || modulus.min_exp() < 0)
        throw Error("lpoly_mod: negative exponents unsupported");
    LPoly r = p;
    long dm = modulus.max_exp();
    CycNum lead_inv = modulus.coeff(dm).inverse();
    while (!r.is_zero() && r.max_exp() >= dm) {
        long e = r.max_exp();
        CycNum f = r.coeff(e) * lead_inv;
        for (const auto& [em, cm] : modulus.coeffs())
            r.set_coeff(e - dm + em, r.coeff(e - dm + em) - f * cm);
    }
    return r;
}

void DiffOp::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void DiffOp::set_coeff(long i, const LPoly& p) {
    if (i >= static_cast<long>(c_.size())) c_.resize(i + 1);
    c_[i] = p;
    trim();
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
}

DiffOp DiffOp::operator-() const {
    DiffOp r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
}

DiffOp operator*(const LPoly& p, DiffOp op) {
    for (auto& c : op.c_) c = p * c;
    op.trim();
    return op;
}

LPoly lpoly_d(const LPoly& p, const LPoly& dvar) {
    // Laurent chain rule: D(v^e) = e v^{e-1} dvar.
    LPoly r;
    for (const auto& [e, c] : p.coeffs()) {
        if (e == 0) continue;
        r += (CycNum(Rational(e)) * c) * (LPoly::monomial(e - 1, CycNum(1L)) * dvar);
    }
    return r;
}

DiffOp DiffOp::compose(const DiffOp& other, const LPoly& dvar) const {
    // (sum_i a_i D^i)(sum_j b_j D^j): push each D^i through b_j by Leibniz.
    DiffOp result;
    for (long i = 0; i <= order(); ++i) {
        if (coeff(i).is_zero()) continue;
        for (long j = 0; j <= other.order(); ++j) {
            if (other.coeff(j).is_zero()) continue;
            // D^i (b_j D^j .) = sum_{t=0}^{i} C(i,t) (D^t b_j) D^{i-t+j}
            LPoly dt = other.coeff(j);
            for (long t = 0; t <= i; ++t) {
                LPoly term = CycNum(rat_binomial(i, t)) * (coeff(i) * dt);
                DiffOp add;
                add.set_coeff(i - t + j, term);
                result += add;
                if (t < i) dt = lpoly_d(dt, dvar);
            }
        }
    }
    return result;
}

QSeries DiffOp::apply(const QSeries& s, const QSeries& Lval) const {
    QSeries acc(s.var(), s.trunc());
    QSeries ds = s;
    for (long i = 0; i <= order(); ++i) {
        if (!coeff(i).is_zero()) acc += lpoly_eval_series(coeff(i), Lval) * ds;
        if (i < order()) ds = d_log(ds);
    }
    return acc;
}

DiffOp DiffOp::reduced(const LPoly& modulus) const {
    DiffOp r;
    for (long i = 0; i <= order(); ++i) r.set_coeff(i, lpoly_mod(coeff(i), modulus));
    return r;
}

}  // namespace gwcrc
