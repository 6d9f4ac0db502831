#pragma once

#include <gmpxx.h>

#include <string>

namespace gwcrc {

// Exact rational arithmetic, backed by GMP.
using Rational = mpq_class;

inline Rational rat(long p, long q = 1) {
    Rational r(p, q);
    r.canonicalize();
    return r;
}

// Canonical "p/q" form; integers render without the "/1".
inline std::string rat_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational r(s);
    r.canonicalize();
    return r;
}

inline Rational rat_binomial(long n, long k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return Rational(b);
}

inline Rational rat_factorial(long n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(f);
}

}  // namespace gwcrc
