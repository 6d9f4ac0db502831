#include "gwcrc/modcurves.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "gwcrc/errors.hpp"

namespace gwcrc {

namespace {

using Key = std::pair<long, std::vector<long>>;
std::map<Key, Rational> g_memo;
std::mutex g_memo_mutex;

Rational double_factorial_odd(long m) {
    // (2m+1)!! with (-1)!! = 1
    Rational r(1);
    for (long t = 2 * m + 1; t >= 1; t -= 2) r *= t;
    return r;
}

bool stable(long g, long n) { return 3 * g - 3 + n >= 0 && (g >= 1 || n >= 3); }

// Internal evaluator: unstable or dimension-violating terms contribute 0.
Rational eval(long g, std::vector<long> a) {
    long n = static_cast<long>(a.size());
    if (g < 0 || !stable(g, n)) return Rational(0);
    long dim = 3 * g - 3 + n;
    long total = 0;
    for (long x : a) {
        if (x < 0) return Rational(0);
        total += x;
    }
    if (total != dim) return Rational(0);
    std::sort(a.begin(), a.end(), std::greater<long>());
    if (g == 0 && n == 3) return Rational(1);  // <tau_0^3>
    if (g == 1 && n == 1) return rat(1, 24);   // <tau_1>
    Key key{g, a};
    {
        std::lock_guard<std::mutex> lock(g_memo_mutex);
        auto it = g_memo.find(key);
        if (it != g_memo.end()) return it->second;
    }
    // Recurse on the largest entry a[0] = k + 1 >= 1.
    long k = a[0] - 1;
    std::vector<long> rest(a.begin() + 1, a.end());
    long m = static_cast<long>(rest.size());
    Rational acc(0);
    for (long j = 0; j < m; ++j) {
        std::vector<long> next = rest;
        next[j] += k;
        acc += (double_factorial_odd(rest[j] + k) /
                double_factorial_odd(rest[j] - 1)) *
               eval(g, next);
    }
    Rational half = rat(1, 2);
    for (long b = 0; b <= k - 1; ++b) {
        long c = k - 1 - b;
        Rational w = double_factorial_odd(b) * double_factorial_odd(c);
        std::vector<long> lower = rest;
        lower.push_back(b);
        lower.push_back(c);
        Rational term = eval(g - 1, lower);
        // ordered splits of genus and of the remaining insertions
        for (long g1 = 0; g1 <= g; ++g1)
            for (long mask = 0; mask < (1L << m); ++mask) {
                std::vector<long> left{b}, right{c};
                for (long j = 0; j < m; ++j)
                    ((mask >> j) & 1 ? left : right).push_back(rest[j]);
                Rational l = eval(g1, left);
                if (l == 0) continue;
                term += l * eval(g - g1, right);
            }
        acc += half * w * term;
    }
    acc /= double_factorial_odd(k + 1);
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    g_memo[key] = acc;
    return acc;
}

}  // namespace

Rational psi_integral(long g, const std::vector<long>& a) {
    long n = static_cast<long>(a.size());
    if (g < 0) throw UnstableInput("negative genus");
    for (long x : a)
        if (x < 0) throw UnstableInput("negative exponent");
    if (!stable(g, n)) throw UnstableInput("unstable (g, n)");
    return eval(g, a);
}

Rational string_residual(long g, const std::vector<long>& a) {
    std::vector<long> with = a;
    with.push_back(0);
    Rational lhs = psi_integral(g, with);
    Rational rhs(0);
    for (size_t j = 0; j < a.size(); ++j) {
        if (a[j] == 0) continue;
        std::vector<long> next = a;
        next[j] -= 1;
        rhs += psi_integral(g, next);
    }
    return lhs - rhs;
}

Rational dilaton_residual(long g, const std::vector<long>& a) {
    std::vector<long> with = a;
    with.push_back(1);
    Rational lhs = psi_integral(g, with);
    long n = static_cast<long>(a.size());
    Rational rhs(0);
    if (stable(g, n))
        rhs = Rational(2 * g - 2 + n) * psi_integral(g, a);
    return lhs - rhs;
}

}  // namespace gwcrc
