#include "gwcrc/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace gwcrc {

namespace {

using Poly = std::vector<Rational>;  // index = degree, may have zero tail

void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division; requires divisor monic-up-to-unit and remainder zero.
Poly poly_div_exact(Poly num, const Poly& den) {
    Poly q(num.size(), Rational(0));
    long dd = static_cast<long>(den.size()) - 1;
    for (long i = static_cast<long>(num.size()) - 1; i >= dd; --i) {
        if (num[i] == 0) continue;
        Rational c = num[i] / den[dd];
        q[i - dd] = c;
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    poly_trim(num);
    if (!num.empty()) throw Error("cyclotomic: inexact poly division");
    poly_trim(q);
    return q;
}

// num mod den (den monic).
Poly poly_mod(Poly num, const Poly& den) {
    long dd = static_cast<long>(den.size()) - 1;
    for (long i = static_cast<long>(num.size()) - 1; i >= dd; --i) {
        if (num[i] == 0) continue;
        Rational c = num[i] / den[dd];
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    poly_trim(num);
    return num;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// Extended Euclid in Q[x]: returns (g, u, v) with u*a + v*b = g, g monic gcd.
struct Egcd {
    Poly g, u, v;
};

Egcd poly_egcd(Poly a, Poly b) {
    Poly u0 = {Rational(1)}, v0 = {}, u1 = {}, v1 = {Rational(1)};
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        // a = q*b + r
        Poly r = a;
        Poly q(r.size(), Rational(0));
        long db = static_cast<long>(b.size()) - 1;
        for (long i = static_cast<long>(r.size()) - 1; i >= db; --i) {
            if (r[i] == 0) continue;
            Rational c = r[i] / b[db];
            q[i - db] = c;
            for (long j = 0; j <= db; ++j) r[i - db + j] -= c * b[j];
        }
        poly_trim(r);
        poly_trim(q);
        Poly qu = poly_mul(q, u1), qv = poly_mul(q, v1);
        Poly u2 = u0, v2 = v0;
        u2.resize(std::max(u2.size(), qu.size()), Rational(0));
        for (size_t i = 0; i < qu.size(); ++i) u2[i] -= qu[i];
        v2.resize(std::max(v2.size(), qv.size()), Rational(0));
        for (size_t i = 0; i < qv.size(); ++i) v2[i] -= qv[i];
        poly_trim(u2);
        poly_trim(v2);
        a = b;
        b = r;
        u0 = u1;
        u1 = u2;
        v0 = v1;
        v1 = v2;
    }
    if (!a.empty() && a.back() != 1) {
        Rational lead = a.back();
        for (auto& c : a) c /= lead;
        for (auto& c : u0) c /= lead;
        for (auto& c : v0) c /= lead;
    }
    return {a, u0, v0};
}

std::map<long, Poly>& phi_cache() {
    static std::map<long, Poly> cache;
    return cache;
}
std::mutex phi_mutex;

const Poly& cyclotomic_poly_locked(long M) {
    auto it = phi_cache().find(M);
    if (it != phi_cache().end()) return it->second;
    Poly num(M + 1, Rational(0));
    num[0] = -1;
    num[M] = 1;  // x^M - 1
    for (long d = 1; d < M; ++d) {
        if (M % d != 0) continue;
        num = poly_div_exact(num, cyclotomic_poly_locked(d));
    }
    return phi_cache().emplace(M, std::move(num)).first->second;
}

std::vector<Rational> reduce_mod_phi(Poly p, long M) {
    const Poly& phi = cyclotomic_poly(M);
    p = poly_mod(std::move(p), phi);
    p.resize(phi.size() - 1, Rational(0));
    return p;
}

}  // namespace

const std::vector<Rational>& cyclotomic_poly(long M) {
    std::lock_guard<std::mutex> lock(phi_mutex);
    return cyclotomic_poly_locked(M);
}

long euler_phi(long M) {
    return static_cast<long>(cyclotomic_poly(M).size()) - 1;
}

CycNum::CycNum(long conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {
    coeffs_ = reduce_mod_phi(std::move(coeffs_), conductor_);
}

bool CycNum::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational CycNum::rational_value() const {
    if (!is_rational()) throw Error("CycNum: not a rational value: " + to_string());
    return coeffs_[0];
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

CycNum embed(const CycNum& x, long M2) {
    long M = x.conductor();
    if (M2 % M != 0)
        throw NonDivisibleConductor("conductor " + std::to_string(M) +
                                    " does not divide " + std::to_string(M2));
    if (M == M2) return x;
    long step = M2 / M;
    Poly p(static_cast<size_t>(euler_phi(M) - 1) * step + 1, Rational(0));
    for (size_t j = 0; j < x.coeffs().size(); ++j) p[j * step] = x.coeffs()[j];
    return CycNum(M2, std::move(p));
}

namespace {

void promote(CycNum& a, CycNum& b) {
    if (a.conductor() == b.conductor()) return;
    long M = std::lcm(a.conductor(), b.conductor());
    a = embed(a, M);
    b = embed(b, M);
}

}  // namespace

CycNum& CycNum::operator+=(const CycNum& o) {
    CycNum b = o;
    promote(*this, b);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    CycNum b = o;
    promote(*this, b);
    for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
    return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
    CycNum b = o;
    promote(*this, b);
    Poly prod = poly_mul(coeffs_, b.coeffs_);
    coeffs_ = reduce_mod_phi(std::move(prod), conductor_);
    return *this;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw Error("CycNum: division by zero");
    if (is_rational()) return CycNum(Rational(1) / coeffs_[0]);
    Egcd e = poly_egcd(coeffs_, cyclotomic_poly(conductor_));
    if (e.g.size() != 1) throw Error("CycNum: inverse gcd not constant");
    // u * this == g (a nonzero constant) mod Phi_M.
    Rational g = e.g[0];
    Poly u = e.u;
    for (auto& c : u) c /= g;
    return CycNum(conductor_, std::move(u));
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= o.inverse(); }

bool CycNum::operator==(const CycNum& o) const {
    CycNum a = *this, b = o;
    promote(a, b);
    return a.coeffs_ == b.coeffs_;
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum r(Rational(1)), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string CycNum::to_string() const {
    if (is_rational()) return rat_to_string(coeffs_[0]);
    std::ostringstream os;
    os << "[M=" << conductor_;
    for (const auto& c : coeffs_) os << " " << rat_to_string(c);
    os << "]";
    return os.str();
}

CycNum cyc_root_of_unity(long M, long power) {
    power %= M;
    if (power < 0) power += M;
    Poly p(static_cast<size_t>(power) + 1, Rational(0));
    p[power] = 1;
    return CycNum(M, std::move(p));
}

CycNum product_one_minus_zeta(long n) {
    CycNum prod(Rational(1));
    CycNum one(Rational(1));
    for (long l = 1; l < n; ++l) prod *= one - cyc_root_of_unity(n, l);
    return prod;
}

}  // namespace gwcrc
