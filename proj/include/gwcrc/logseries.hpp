#pragma once

#include <vector>

#include "gwcrc/qseries.hpp"

namespace gwcrc {

// Series with logarithmic grading: value = sum_j comps[j] * (log t)^j / j!.
// All identities in scope close inside this graded ring; no transcendental
// log ever appears in coefficients.
struct LogSeries {
    std::vector<QSeries> comps;

    LogSeries() = default;
    explicit LogSeries(QSeries plain) { comps.push_back(std::move(plain)); }

    long log_degree() const { return static_cast<long>(comps.size()) - 1; }
    const QSeries& comp(long j) const {
        static const QSeries zero;
        return (j >= 0 && j < static_cast<long>(comps.size())) ? comps[j] : zero;
    }

    void normalize() {
        while (!comps.empty() && comps.back().is_zero()) comps.pop_back();
    }

    bool is_zero() const {
        for (const auto& c : comps)
            if (!c.is_zero()) return false;
        return true;
    }

    LogSeries operator-() const {
        LogSeries r = *this;
        for (auto& c : r.comps) c = -c;
        return r;
    }

    LogSeries& operator+=(const LogSeries& o) {
        if (o.comps.size() > comps.size()) {
            char v = o.comps[0].var();
            long t = comps.empty() ? o.comps[0].trunc() : comps[0].trunc();
            comps.resize(o.comps.size(), QSeries(v, t));
        }
        for (size_t j = 0; j < o.comps.size(); ++j) comps[j] += o.comps[j];
        normalize();
        return *this;
    }
    LogSeries& operator-=(const LogSeries& o) { return *this += -o; }
    friend LogSeries operator+(LogSeries a, const LogSeries& b) { return a += b; }
    friend LogSeries operator-(LogSeries a, const LogSeries& b) { return a += -b; }

    // Multiply by a plain series (log-degree 0).
    friend LogSeries operator*(const QSeries& s, LogSeries g) {
        for (auto& c : g.comps) c = s * c;
        g.normalize();
        return g;
    }
};

// D = t d/dt on the graded ring: D((log t)^j / j!) = (log t)^{j-1} / (j-1)!.
inline LogSeries d_log(const LogSeries& g) {
    LogSeries r = g;
    for (size_t j = 0; j < r.comps.size(); ++j) {
        r.comps[j] = d_log(g.comps[j]);
        if (j + 1 < g.comps.size()) r.comps[j] += g.comps[j + 1];
    }
    r.normalize();
    return r;
}

}  // namespace gwcrc
