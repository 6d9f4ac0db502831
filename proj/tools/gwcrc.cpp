// gwcrc: exact series engine for the two local targets and their
// higher-genus correspondence. Commands: series | rmatrix | potential |
// verify. Exit codes: 0 pass, 1 identity failure, 2 usage, 3 internal.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <thread>

#include "gwcrc/graphsum.hpp"
#include "gwcrc/json_io.hpp"
#include "gwcrc/lgmirror.hpp"

using namespace gwcrc;

namespace {

long thread_cap() {
    const char* env = std::getenv("GWCRC_THREADS");
    long cap = env ? std::atol(env) : 1;
    long hw = static_cast<long>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    return std::max(1L, std::min(cap, hw));
}

Target parse_target(const std::string& t) {
    return t == "cnzn" ? Target::CnZn : Target::KP;
}

CycNum parse_rho(long n, const std::string& sel) {
    if (sel == "auto")
        return n % 2 ? CycNum(-1L) : cyc_root_of_unity(2 * n, 1);
    if (sel == "minus-one") return CycNum(-1L);
    long idx = std::stol(sel);
    return cyc_root_of_unity(2 * n, idx);
}

void emit(const json& out, const std::string& path) {
    std::string text = out.dump(2);
    if (!path.empty()) {
        std::ofstream f(path);
        f << text << "\n";
    }
    std::cout << text << "\n";
}

struct Check {
    std::string name;
    std::function<std::string()> run;  // returns "" on pass, reason on fail
};

// Runs checks (optionally in parallel, capped by GWCRC_THREADS) and appends
// them to the report in their declaration order.
bool run_checks(const std::vector<Check>& checks, json& report) {
    long cap = thread_cap();
    std::vector<std::string> results(checks.size());
    if (cap <= 1) {
        for (size_t i = 0; i < checks.size(); ++i) results[i] = checks[i].run();
    } else {
        std::vector<std::future<std::string>> futs(checks.size());
        size_t next = 0;
        std::vector<size_t> active;
        while (next < checks.size() || !active.empty()) {
            while (next < checks.size() &&
                   active.size() < static_cast<size_t>(cap)) {
                futs[next] = std::async(std::launch::async, checks[next].run);
                active.push_back(next++);
            }
            size_t idx = active.front();
            active.erase(active.begin());
            results[idx] = futs[idx].get();
        }
    }
    bool all = true;
    for (size_t i = 0; i < checks.size(); ++i) {
        json item{{"name", checks[i].name}};
        if (results[i].empty()) {
            item["status"] = "pass";
            item["residual"] = "0";
        } else {
            item["status"] = "fail";
            item["detail"] = results[i];
            all = false;
        }
        report["checks"].push_back(item);
    }
    return all;
}

// Wraps an identity predicate so library identity errors report as failures.
std::function<std::string()> guard(std::function<bool()> f) {
    return [f]() -> std::string {
        try {
            return f() ? "" : "residual nonzero";
        } catch (const Error& e) {
            return e.what();
        }
    };
}

bool zero_to(const QSeries& s, long order) {
    return s.trunc() >= order && s.truncated(order).known_zero();
}

// ---------------------------------------------------------------- suites

std::vector<Check> suite_lemmas(long n, long order) {
    std::vector<Check> cs;
    for (Target tgt : {Target::KP, Target::CnZn}) {
        std::string tn = tgt == Target::KP ? "kp" : "cnzn";
        cs.push_back({"pf-residual-" + tn, guard([=] {
            QSeries L = l_series(tgt, n, order + 2 * n);
            if (tgt == Target::KP) {
                auto I = i_function_kp(n, order + 2 * n, 2 * n);
                for (const auto& r : pf_residual_kp(n, I.graded, L))
                    for (long j = 0; j <= r.log_degree(); ++j)
                        if (!zero_to(r.comp(j), order)) return false;
            } else {
                auto I = i_function_cnzn(n, order + 2 * n, 2 * n);
                for (const auto& r : pf_residual_cnzn(n, I.comps, L))
                    if (!zero_to(r, order)) return false;
            }
            return true;
        })});
        cs.push_back({"ckxa-suite-" + tn, guard([=] {
            FrobeniusData f = frobenius_data(tgt, n, order);
            QSeries prod = QSeries::one(f.L.var(), f.L.trunc());
            for (long i = 1; i <= n; ++i) prod *= f.C[i];
            if (!zero_to(prod - f.L.pow(n), order)) return false;
            for (long i = 1; i <= n; ++i)
                if (!zero_to(f.C[i] - f.C[n + 1 - i], order)) return false;
            for (long r = 1; r < n; ++r)
                if (!zero_to(f.K[r] * f.K[n - r] - f.L.pow(n), order))
                    return false;
            QSeries xs(f.L.var(), f.L.trunc());
            for (long r = 0; r <= n; ++r) xs += f.X[r];
            if (!zero_to(xs - CycNum(Rational(n)) * d_log(f.L) *
                                  f.L.inverse(),
                         order))
                return false;
            QSeries asum(f.L.var(), f.L.trunc());
            for (long r = 1; r < n; ++r) {
                asum += f.A[r];
                if (!zero_to(f.A[r] + f.A[n - r], order)) return false;
            }
            return zero_to(asum, order);
        })});
    }
    cs.push_back({"da-relation", guard([=] {
        FrobeniusData f = frobenius_data(Target::KP, n, order);
        return zero_to(da_relation_residual(f), order);
    })});
    return cs;
}

std::vector<Check> suite_flatness(long n, long order) {
    std::vector<Check> cs;
    for (Target tgt : {Target::KP, Target::CnZn}) {
        std::string tn = tgt == Target::KP ? "kp" : "cnzn";
        cs.push_back({"flatness-" + tn, guard([=] {
            FrobeniusData f = frobenius_data(tgt, n, order);
            PTable p = solve_flatness(f, 4, true);
            for (long k = 1; k <= 4; ++k)
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j)
                        if (!zero_to(flatness_residual(f, p, k, i, j),
                                     order / 2))
                            return false;
            if (tgt == Target::KP) {
                CycNum c0 = p.Pt[0][0][0].coeff(0) + cyc_sqrt_minus_one();
                if (!c0.is_zero()) return false;
            }
            return true;
        })});
        cs.push_back({"symplectic-" + tn, guard([=] {
            FrobeniusData f = frobenius_data(tgt, n, order);
            PTable p = solve_flatness(f, 4, true);
            for (long m = 0; m <= 3; ++m)
                for (long a = 0; a < n; ++a)
                    for (long b = 0; b < n; ++b)
                        if (!zero_to(symplectic_residual(f, p, m, a, b),
                                     order / 2))
                            return false;
            return true;
        })});
    }
    cs.push_back({"row0-polynomiality", guard([=] {
        auto fits = true_row0_fits(Target::KP, n, 3,
                                   std::max(order, 12 * n + 8));
        return !fits.empty();
    })});
    return cs;
}

std::vector<Check> suite_appendix(long n, long order) {
    std::vector<Check> cs;
    cs.push_back({"graded-poly-closed-forms", guard([=] {
        for (long m = 0; m <= 5; ++m) {
            LPoly xm1 = LPoly::monomial(1, CycNum(1L)) - LPoly::one();
            if (!(h_poly(n, m, 0) == LPoly::one())) return false;
            LPoly h1 = CycNum(rat(1, n) * rat_binomial(m, 2)) * xm1;
            if (!(h_poly(n, m, 1) == h1)) return false;
            Rational n2(n * n);
            LPoly t1 =
                CycNum(rat_binomial(m, 3) / n2) *
                ((LPoly::monomial(1, CycNum(Rational(n + 1))) - LPoly::one()) *
                 xm1);
            LPoly t2 =
                CycNum(Rational(3) * rat_binomial(m, 4) / n2) * (xm1 * xm1);
            if (!(h_poly(n, m, 2) == t1 + t2)) return false;
        }
        return true;
    })});
    cs.push_back({"decomposition", guard([=] {
        QSeries L = l_series(Target::KP, n, order + 2 * n);
        auto I = i_function_kp(n, order + 2 * n, n + 1);
        for (long j = 0; j < n; ++j)
            for (const auto& r :
                 l_decomposition_residual(Target::KP, n, j, I.plain[1], L))
                if (!zero_to(r, order)) return false;
        return true;
    })});
    cs.push_back({"mod-ideal", guard([=] {
        for (long k = 1; k <= n; ++k)
            if (!verify_mod_ideal(n, k)) return false;
        return !verify_mod_ideal(n, 2, Rational(1));
    })});
    cs.push_back({"operator-comparison", guard([=] {
        for (long k = 1; k <= n; ++k)
            if (!operator_comparison_under_change(n, k)) return false;
        return !operator_comparison_under_change(n, 2, true);
    })});
    return cs;
}

std::vector<Check> suite_lgmirror(long n, long order) {
    std::vector<Check> cs;
    cs.push_back({"critical-point", guard([=] {
        CriticalData cd = critical_point(n, order);
        return constraint_residual(n, cd.w).known_zero();
    })});
    cs.push_back({"critical-value-derivative", guard([=] {
        QSeries d = critical_value_derivative(n, order);
        return zero_to(d - l_series(Target::KP, n, order), order);
    })});
    cs.push_back({"hessian-det", guard([=] {
        QSeries det = hessian_det(n, order);
        return det.coeff(0) == CycNum(-1L);
    })});
    return cs;
}

std::vector<Check> suite_crc(long n, long g, const std::vector<long>& ins,
                             long order, const CycNum& rho, json& extras) {
    std::vector<Check> cs;
    extras["rho"] = to_json(rho);
    cs.push_back({"crc-contribution-wise", guard([=] {
        CrcCheck r = verify_crc(n, g, ins, order + 6, rho, order);
        return r.ok;
    })});
    return cs;
}

// ---------------------------------------------------------------- commands

int cmd_series(Target tgt, long n, long order, const std::string& what,
               long index, const std::string& jpath) {
    QSeries s;
    if (what == "L") {
        s = l_series(tgt, n, order);
    } else if (what == "mirror") {
        if (tgt != Target::KP) {
            std::cerr << "mirror series is defined on the kp side\n";
            return 2;
        }
        CriticalData cd = critical_point(n, order);
        if (index < 0 || index > n) {
            std::cerr << "mirror index must be in [0, n]\n";
            return 2;
        }
        s = cd.w[index];
    } else if (what == "I") {
        if (index < 0) {
            std::cerr << "index must be >= 0\n";
            return 2;
        }
        if (tgt == Target::KP)
            s = i_function_kp(n, order, index + 1).plain[index];
        else
            s = i_function_cnzn(n, order, index + 1).comps[index];
    } else {
        FrobeniusData f = frobenius_data(tgt, n, order);
        if (index < 0 || index > n) {
            std::cerr << "index must be in [0, n]\n";
            return 2;
        }
        const std::vector<QSeries>& v = what == "C"   ? f.C
                                        : what == "K" ? f.K
                                        : what == "X" ? f.X
                                                      : f.A;
        s = v[index];
    }
    json out{{"command", "series"},
             {"target", tgt == Target::KP ? "kp" : "cnzn"},
             {"n", n},
             {"order", order},
             {"what", what},
             {"index", index},
             {"series", to_json(s.truncated(std::min(order, s.trunc())))}};
    emit(out, jpath);
    return 0;
}

int cmd_rmatrix(Target tgt, long n, long kmax, long order, long zorder,
                const std::string& jpath) {
    long fit_order = std::max(order, 4 * n * kmax + 8);
    FrobeniusData f = frobenius_data(tgt, n, fit_order);
    PTable p = solve_flatness(f, kmax, true);
    json rows = json::array();
    for (long k = 0; k <= kmax; ++k) {
        json row = json::array();
        for (long j = 0; j < n; ++j)
            row.push_back(to_json(reconstruct_row0(f, p, k, j, false)));
        rows.push_back(row);
    }
    json qrr = json::array();
    for (long i = 0; i < n; ++i) {
        json col = json::array();
        for (const CycNum& c : qrr_coeffs(tgt, n, i, zorder))
            col.push_back(to_json(c));
        qrr.push_back(col);
    }
    std::string symp = "0";
    for (long m = 0; m <= std::min(kmax, 4L); ++m)
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b)
                if (!symplectic_residual(f, p, m, a, b)
                         .truncated(order)
                         .known_zero())
                    symp = "nonzero";
    json out{{"command", "rmatrix"},
             {"target", tgt == Target::KP ? "kp" : "cnzn"},
             {"n", n},
             {"kmax", kmax},
             {"row0", rows},
             {"qrr_diagonal", qrr},
             {"symplectic", symp}};
    emit(out, jpath);
    return 0;
}

int cmd_potential(Target tgt, long n, long g, const std::vector<long>& ins,
                  long order, const std::string& jpath) {
    long m = static_cast<long>(ins.size());
    if (3 * g - 3 + m < 0 || (g == 0 && m < 3)) {
        std::cerr << "(g, m) outside the stable range\n";
        return 2;
    }
    FrobeniusData f = frobenius_data(tgt, n, order);
    long kmax = std::max(3 * g - 2 + m, 0L);
    PTable p = solve_flatness(f, kmax, true);
    GraphGens G = make_generators(f, p);
    json graphs = json::array();
    json per_graph = json::object();
    QSeries total(G.var, G.trunc);
    long gi = 0;
    for (const StableGraph& sg : enumerate_stable_graphs(g, m)) {
        json jg{{"genus", sg.genus},
                {"legs", sg.legv},
                {"mult", sg.mult},
                {"aut", sg.aut}};
        graphs.push_back(jg);
        QSeries acc(G.var, G.trunc);
        std::vector<long> dec(sg.num_vertices(), 0);
        while (true) {
            acc += contribution(G, sg, dec, ins);
            long i = 0;
            for (; i < sg.num_vertices(); ++i) {
                if (++dec[i] < n) break;
                dec[i] = 0;
            }
            if (i == sg.num_vertices()) break;
        }
        acc = CycNum(rat(1, sg.aut)) * acc;
        per_graph[std::to_string(gi++)] =
            to_json(acc.truncated(std::min(order, acc.trunc())));
        total += acc;
    }
    json out{{"command", "potential"},
             {"target", tgt == Target::KP ? "kp" : "cnzn"},
             {"n", n},
             {"g", g},
             {"insertions", ins},
             {"graphs", graphs},
             {"per_graph", per_graph},
             {"total", to_json(total.truncated(std::min(order, total.trunc())))}};
    emit(out, jpath);
    return 0;
}

int cmd_verify(long n, const std::string& suite, long order, long g,
               const std::vector<long>& ins, const std::string& rho_sel,
               const std::string& jpath) {
    json report{{"command", "verify"}, {"suite", suite}, {"n", n},
                {"checks", json::array()}};
    std::vector<Check> checks;
    auto add = [&](std::vector<Check> v) {
        for (auto& c : v) checks.push_back(std::move(c));
    };
    if (suite == "lemmas" || suite == "all") add(suite_lemmas(n, order));
    if (suite == "flatness" || suite == "all") add(suite_flatness(n, order));
    if (suite == "appendix" || suite == "all") add(suite_appendix(n, order));
    if (suite == "lgmirror" || suite == "all")
        add(suite_lgmirror(n, std::min(order, 8L)));
    if (suite == "crc" || suite == "all") {
        CycNum rho = parse_rho(n, rho_sel);
        std::vector<long> use_ins = ins;
        if (use_ins.empty() && g == 1) use_ins = {0};  // default point (1,1)
        add(suite_crc(n, g, use_ins, std::min(order, 10L), rho, report));
    }
    bool ok = run_checks(checks, report);
    report["passed"] = ok;
    emit(report, jpath);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact series engine for the local projective target and "
                 "its orbifold partner"};
    app.require_subcommand(1);

    std::string target = "kp", what = "L", suite = "all", jpath,
                rho_sel = "auto";
    long n = 3, order = 10, zorder = 6, kmax = 4, g = 1, index = 0;
    std::vector<long> insertions;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--target", target)->check(CLI::IsMember({"kp", "cnzn"}));
        c->add_option("--n", n)->check(CLI::Range(3L, 64L));
        c->add_option("--order", order)->check(CLI::Range(1L, 512L));
        c->add_option("--json", jpath);
    };

    CLI::App* cs = app.add_subcommand("series", "print a named series");
    add_common(cs);
    cs->add_option("--what", what)
        ->check(CLI::IsMember({"I", "L", "C", "K", "X", "A", "mirror"}));
    cs->add_option("--index", index);

    CLI::App* cr = app.add_subcommand("rmatrix", "row-0 fits and diagonals");
    add_common(cr);
    cr->add_option("--kmax", kmax)->check(CLI::Range(0L, 16L));
    cr->add_option("--zorder", zorder)->check(CLI::Range(0L, 32L));

    CLI::App* cp = app.add_subcommand("potential", "graph-sum potential");
    add_common(cp);
    cp->add_option("--g", g)->check(CLI::Range(0L, 4L));
    cp->add_option("--insertions", insertions)->delimiter(',');

    CLI::App* cv = app.add_subcommand("verify", "run a verification suite");
    add_common(cv);
    cv->add_option("--suite", suite)
        ->check(CLI::IsMember(
            {"lemmas", "flatness", "appendix", "lgmirror", "crc", "all"}));
    cv->add_option("--g", g)->check(CLI::Range(0L, 4L));
    cv->add_option("--insertions", insertions)->delimiter(',');
    cv->add_option("--rho", rho_sel);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Target tgt = parse_target(target);
        if (app.got_subcommand("series"))
            return cmd_series(tgt, n, order, what, index, jpath);
        if (app.got_subcommand("rmatrix"))
            return cmd_rmatrix(tgt, n, kmax, order, zorder, jpath);
        if (app.got_subcommand("potential"))
            return cmd_potential(tgt, n, g, insertions, order, jpath);
        return cmd_verify(n, suite, order, g, insertions, rho_sel, jpath);
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
