#pragma once

#include <vector>

#include "gwcrc/errors.hpp"
#include "gwcrc/rational.hpp"

namespace gwcrc {

// Element of the cyclotomic field Q(zeta_M), stored as a dense coefficient
// vector over the power basis {zeta_M^j : 0 <= j < phi(M)} reduced mod the
// M-th cyclotomic polynomial. Canonical: equal elements have identical
// (conductor, coeffs) after promotion to a common conductor.
class CycNum {
  public:
    CycNum() : conductor_(1), coeffs_(1, Rational(0)) {}
    explicit CycNum(const Rational& r) : conductor_(1), coeffs_(1, r) {}
    explicit CycNum(long v) : conductor_(1), coeffs_(1, Rational(v)) {}
    CycNum(long conductor, std::vector<Rational> coeffs);

    long conductor() const { return conductor_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    // Requires is_rational(); the value as an element of Q.
    Rational rational_value() const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    CycNum inverse() const;
    CycNum pow(long e) const;

    std::string to_string() const;

  private:
    long conductor_;
    std::vector<Rational> coeffs_;
};

long euler_phi(long M);

// M-th cyclotomic polynomial, monic, coefficient vector of length phi(M)+1
// (index = degree). Computed by exact division of x^M - 1 by lower
// cyclotomics; cached.
const std::vector<Rational>& cyclotomic_poly(long M);

// zeta_M^power, canonically reduced.
CycNum cyc_root_of_unity(long M, long power);

// Same field element expressed in Q(zeta_M2). Requires conductor(x) | M2.
CycNum embed(const CycNum& x, long M2);

// prod_{l=1}^{n-1} (1 - zeta_n^l); equals the integer n.
CycNum product_one_minus_zeta(long n);

inline CycNum cyc_sqrt_minus_one() { return cyc_root_of_unity(4, 1); }

}  // namespace gwcrc
