#include "gwcrc/graphsum.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace gwcrc {

namespace {

long factorial_long(long k) {
    long r = 1;
    for (long t = 2; t <= k; ++t) r *= t;
    return r;
}

bool connected(long V, const std::vector<std::vector<long>>& mult) {
    std::vector<long> comp(V);
    for (long v = 0; v < V; ++v) comp[v] = v;
    std::function<long(long)> find = [&](long v) {
        while (comp[v] != v) v = comp[v] = comp[comp[v]];
        return v;
    };
    for (long u = 0; u < V; ++u)
        for (long w = u + 1; w < V; ++w)
            if (mult[u][w] > 0) comp[find(u)] = find(w);
    for (long v = 1; v < V; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

using Key = std::tuple<std::vector<long>, std::vector<long>,
                       std::vector<std::vector<long>>>;

Key apply_perm(const StableGraph& sg, const std::vector<long>& perm) {
    long V = sg.num_vertices();
    std::vector<long> pg(V), pl(sg.m);
    std::vector<std::vector<long>> pm(V, std::vector<long>(V, 0));
    for (long v = 0; v < V; ++v) pg[perm[v]] = sg.genus[v];
    for (long l = 0; l < sg.m; ++l) pl[l] = perm[sg.legv[l]];
    for (long u = 0; u < V; ++u)
        for (long w = 0; w < V; ++w) pm[perm[u]][perm[w]] = sg.mult[u][w];
    return {pg, pl, pm};
}

long automorphism_count(const StableGraph& sg) {
    long V = sg.num_vertices();
    std::vector<long> perm(V);
    for (long v = 0; v < V; ++v) perm[v] = v;
    Key self{sg.genus, sg.legv, sg.mult};
    long vertex_syms = 0;
    std::vector<long> p = perm;
    do {
        if (apply_perm(sg, p) == self) ++vertex_syms;
    } while (std::next_permutation(p.begin(), p.end()));
    long half_edge = 1;
    for (long u = 0; u < V; ++u) {
        for (long w = u + 1; w < V; ++w) half_edge *= factorial_long(sg.mult[u][w]);
        long loops = sg.mult[u][u];
        half_edge *= factorial_long(loops) * (1L << loops);
    }
    return vertex_syms * half_edge;
}

}  // namespace

std::vector<StableGraph> enumerate_stable_graphs(long g, long m) {
    std::vector<StableGraph> out;
    std::set<Key> seen;
    long vmax = std::max(1L, 2 * g - 2 + m);
    for (long V = 1; V <= vmax; ++V) {
        // genus vectors via mixed radix
        std::vector<long> gv(V, 0);
        while (true) {
            long gsum = 0;
            for (long x : gv) gsum += x;
            long E = g - gsum + V - 1;
            if (E >= 0) {
                // distribute E edges among pairs (u <= w)
                std::vector<std::pair<long, long>> slots;
                for (long u = 0; u < V; ++u)
                    for (long w = u; w < V; ++w) slots.emplace_back(u, w);
                std::vector<long> cnt(slots.size(), 0);
                std::function<void(size_t, long)> distribute = [&](size_t s,
                                                                   long rem) {
                    if (s + 1 == slots.size()) {
                        cnt[s] = rem;
                    } else {
                        for (long t = 0; t <= rem; ++t) {
                            cnt[s] = t;
                            distribute(s + 1, rem - t);
                        }
                        return;
                    }
                    std::vector<std::vector<long>> mult(
                        V, std::vector<long>(V, 0));
                    for (size_t i = 0; i < slots.size(); ++i) {
                        auto [u, w] = slots[i];
                        if (u == w)
                            mult[u][u] = cnt[i];
                        else
                            mult[u][w] = mult[w][u] = cnt[i];
                    }
                    if (!connected(V, mult)) return;
                    // leg assignments
                    std::vector<long> legv(m, 0);
                    while (true) {
                        StableGraph sg;
                        sg.g = g;
                        sg.m = m;
                        sg.genus = gv;
                        sg.legv = legv;
                        sg.mult = mult;
                        bool stable = true;
                        for (long v = 0; v < V && stable; ++v)
                            if (2 * gv[v] - 2 + sg.valence(v) <= 0)
                                stable = false;
                        if (stable) {
                            // canonical representative over vertex relabelings
                            std::vector<long> p(V);
                            for (long v = 0; v < V; ++v) p[v] = v;
                            Key best = apply_perm(sg, p);
                            while (std::next_permutation(p.begin(), p.end())) {
                                Key k = apply_perm(sg, p);
                                if (k < best) best = k;
                            }
                            if (seen.insert(best).second) {
                                sg.genus = std::get<0>(best);
                                sg.legv = std::get<1>(best);
                                sg.mult = std::get<2>(best);
                                sg.aut = automorphism_count(sg);
                                out.push_back(sg);
                            }
                        }
                        // next leg assignment
                        long i = 0;
                        for (; i < m; ++i) {
                            if (++legv[i] < V) break;
                            legv[i] = 0;
                        }
                        if (i == m) break;
                        if (m == 0) break;
                    }
                };
                if (!slots.empty()) distribute(0, E);
            }
            // next genus vector
            long i = 0;
            for (; i < V; ++i) {
                if (++gv[i] <= g) break;
                gv[i] = 0;
            }
            if (i == V) break;
        }
    }
    return out;
}

GraphGens make_generators(const FrobeniusData& f, const PTable& p) {
    GraphGens G;
    G.n = f.n;
    G.var = f.L.var();
    G.trunc = f.L.trunc();
    G.kmax = p.kmax;
    G.kp_signs = (f.target == Target::KP);
    G.Pt = p.Pt;
    G.isg = f.inv_sqrt_g;
    for (long i = 0; i < f.n; ++i)
        G.kratio.push_back(f.K[i] * f.L.pow(i).inverse());
    return G;
}

GraphGens make_upsilon_generators(const FrobeniusData& forb,
                                  const std::vector<std::vector<LPoly>>& kp_fits,
                                  const CycNum& rho, long kmax) {
    if (!(rho.pow(forb.n) + CycNum(1L)).is_zero())
        throw InvalidRho("rho^n != -1");
    long n = forb.n;
    GraphGens G;
    G.n = n;
    G.var = forb.L.var();
    G.trunc = forb.L.trunc();
    G.kmax = kmax;
    G.kp_signs = true;  // transported pieces keep the first target's signs
    G.isg = CycNum(Rational(-n)) * cyc_sqrt_minus_one();
    for (long i = 0; i < n; ++i)
        G.kratio.push_back(forb.K[i] * forb.L.pow(i).inverse());

    CycNum scale = CycNum(rat(-1, n)) * rho;
    CycNum rinv = rho.pow(-1);
    QSeries linv = forb.L.inverse();
    G.Pt.assign(kmax + 1,
                std::vector<std::vector<QSeries>>(
                    n, std::vector<QSeries>(n, QSeries(G.var, G.trunc))));
    for (long k = 0; k <= kmax; ++k)
        for (long j = 0; j < n; ++j)
            G.Pt[k][0][j] =
                cyc_root_of_unity(n, k * j) *
                lpoly_eval_series(kp_fits[j][k].scale_var(scale), forb.L);
    // remaining rows from the transported chain, descending in i
    for (long k = 0; k <= kmax; ++k)
        for (long j = 0; j < n; ++j) {
            QSeries top = G.Pt[k][0][j];
            if (k > 0) top += rinv * (linv * d_log(G.Pt[k - 1][0][j]));
            G.Pt[k][n - 1][j] = top;
            for (long i = n - 1; i >= 2; --i) {
                QSeries nxt = G.Pt[k][i][j];
                if (k > 0)
                    nxt += rinv * (linv * d_log(G.Pt[k - 1][i][j]) -
                                   forb.A[i] * G.Pt[k - 1][i][j]);
                G.Pt[k][i - 1][j] = nxt;
            }
        }
    return G;
}

namespace {

QSeries pt_at(const GraphGens& G, long k, long i, long j) {
    if (k < 0) throw IndexOutOfRange("pt_at");
    if (k > G.kmax) throw AskLargerKmax("need level " + std::to_string(k));
    return G.Pt[k][i][j];
}

CycNum zeta_pow(const GraphGens& G, long e) { return cyc_root_of_unity(G.n, e); }

}  // namespace

QSeries leg_factor(const GraphGens& G, long c, long a, long p) {
    long inv = inv_index(G.n, c);
    long s = G.kp_signs ? a + 1 : a;
    CycNum pre(s % 2 ? rat(-1, G.n) : rat(1, G.n));
    return (pre * zeta_pow(G, -(a + inv) * p)) *
           (G.kratio[inv] * pt_at(G, a, inv, p));
}

QSeries edge_factor(const GraphGens& G, long p1, long b1, long p2, long b2) {
    long s = G.kp_signs ? b1 + b2 + 1 : b1 + b2;
    CycNum pre(s % 2 ? rat(-1, G.n) : rat(1, G.n));
    QSeries acc(G.var, G.trunc);
    for (long j = 0; j <= b2; ++j) {
        for (long r = 0; r < G.n; ++r) {
            long ir = inv_index(G.n, r);
            CycNum w = zeta_pow(G, -(b1 + j + 1 + ir) * p1 - (b2 - j + r) * p2);
            if (j % 2) w = -w;
            acc += w * (pt_at(G, b1 + j + 1, ir, p1) * pt_at(G, b2 - j, r, p2));
        }
    }
    return pre * acc;
}

QSeries vertex_factor(const GraphGens& G, long gv, long p,
                      const std::vector<long>& flags) {
    long nv = static_cast<long>(flags.size());
    long kcap = 3 * gv - 3 + nv;
    long icap = 3 * gv - 2 + nv;
    QSeries total(G.var, G.trunc);
    std::vector<long> is;
    std::function<void()> emit = [&]() {
        std::vector<long> a = flags;
        a.insert(a.end(), is.begin(), is.end());
        Rational psi = psi_integral(gv, a);
        if (psi == 0) return;
        // 1/prod(multiplicities!) from the unordered tail insertions
        Rational w = psi;
        long run = 1;
        for (size_t t = 1; t <= is.size(); ++t) {
            if (t < is.size() && is[t] == is[t - 1]) {
                ++run;
            } else {
                w /= rat_factorial(run);
                run = 1;
            }
        }
        long k = static_cast<long>(is.size());
        QSeries term = QSeries::constant(G.var, CycNum(w), G.trunc);
        for (long i : is) {
            long ts = G.kp_signs ? i + 1 : i;
            CycNum pre(ts % 2 ? rat(-1, G.n) : rat(1, G.n));
            term *= (pre * zeta_pow(G, -(i - 1) * p)) * pt_at(G, i - 1, 0, p);
        }
        term = G.isg.pow(2 * gv - 2 + nv + k) * term;
        total += term;
    };
    std::function<void(long)> rec = [&](long min_i) {
        emit();
        if (static_cast<long>(is.size()) >= kcap) return;
        for (long i = min_i; i <= icap; ++i) {
            is.push_back(i);
            rec(i);
            is.pop_back();
        }
    };
    rec(2);
    return total;
}

QSeries contribution(const GraphGens& G, const StableGraph& sg,
                     const std::vector<long>& dec,
                     const std::vector<long>& ins) {
    long V = sg.num_vertices();
    std::vector<std::pair<long, long>> edges;
    for (long u = 0; u < V; ++u)
        for (long w = u; w < V; ++w)
            for (long t = 0; t < sg.mult[u][w]; ++t) edges.emplace_back(u, w);
    long nl = sg.m;
    std::vector<long> capsum(V);
    for (long v = 0; v < V; ++v) capsum[v] = 3 * sg.genus[v] - 3 + sg.valence(v);

    QSeries total(G.var, G.trunc);
    std::vector<long> la(nl, 0);
    std::vector<std::pair<long, long>> eb(edges.size(), {0, 0});
    long ne = static_cast<long>(edges.size());

    std::function<void(long)> rec = [&](long idx) {
        if (idx == nl + ne) {
            std::vector<std::vector<long>> flags(V);
            std::vector<long> sums(V, 0);
            for (long l = 0; l < nl; ++l) {
                flags[sg.legv[l]].push_back(la[l]);
                sums[sg.legv[l]] += la[l];
            }
            for (long e = 0; e < ne; ++e) {
                flags[edges[e].first].push_back(eb[e].first);
                sums[edges[e].first] += eb[e].first;
                flags[edges[e].second].push_back(eb[e].second);
                sums[edges[e].second] += eb[e].second;
            }
            for (long v = 0; v < V; ++v)
                if (sums[v] > capsum[v]) return;
            QSeries term = QSeries::one(G.var, G.trunc);
            for (long l = 0; l < nl; ++l)
                term *= leg_factor(G, ins[l], la[l], dec[sg.legv[l]]);
            for (long e = 0; e < ne; ++e)
                term *= edge_factor(G, dec[edges[e].first], eb[e].first,
                                    dec[edges[e].second], eb[e].second);
            for (long v = 0; v < V; ++v)
                term *= vertex_factor(G, sg.genus[v], dec[v], flags[v]);
            total += term;
            return;
        }
        if (idx < nl) {
            for (long a = 0; a <= capsum[sg.legv[idx]]; ++a) {
                la[idx] = a;
                rec(idx + 1);
            }
        } else {
            long e = idx - nl;
            for (long b1 = 0; b1 <= capsum[edges[e].first]; ++b1)
                for (long b2 = 0; b2 <= capsum[edges[e].second]; ++b2) {
                    eb[e] = {b1, b2};
                    rec(idx + 1);
                }
        }
    };
    rec(0);
    return total;
}

QSeries graph_sum(const GraphGens& G, long g, const std::vector<long>& ins) {
    long m = static_cast<long>(ins.size());
    QSeries total(G.var, G.trunc);
    for (const StableGraph& sg : enumerate_stable_graphs(g, m)) {
        long V = sg.num_vertices();
        QSeries acc(G.var, G.trunc);
        std::vector<long> dec(V, 0);
        while (true) {
            acc += contribution(G, sg, dec, ins);
            long i = 0;
            for (; i < V; ++i) {
                if (++dec[i] < G.n) break;
                dec[i] = 0;
            }
            if (i == V) break;
        }
        total += CycNum(rat(1, sg.aut)) * acc;
    }
    return total;
}

CrcCheck verify_crc(long n, long g, const std::vector<long>& ins, long order,
                    const CycNum& rho, long check_order) {
    long m = static_cast<long>(ins.size());
    FrobeniusData forb = frobenius_data(Target::CnZn, n, order);
    long kmax = std::max(3 * g - 2 + m, 0L);
    PTable porb = solve_flatness(forb, kmax, true);
    GraphGens gc = make_generators(forb, porb);
    long kp_order = std::max(4 * n * kmax + 8, order);
    auto fits = true_row0_fits(Target::KP, n, kmax, kp_order);
    GraphGens gu = make_upsilon_generators(forb, fits, rho, kmax);
    CycNum cst = rho.pow(3 * g - 3 + m);
    if ((1 - g) % 2) cst = -cst;  // (-1)^{1-g}
    CrcCheck res;
    res.ok = true;
    for (const StableGraph& sg : enumerate_stable_graphs(g, m)) {
        long V = sg.num_vertices();
        std::vector<long> dec(V, 0);
        while (true) {
            QSeries lhs = contribution(gc, sg, dec, ins);
            QSeries rhs = cst * contribution(gu, sg, dec, ins);
            QSeries diff = lhs - rhs;
            long chk = std::min(diff.trunc(), check_order);
            if (chk < check_order || !diff.truncated(chk).known_zero())
                res.ok = false;
            ++res.decorated;
            long i = 0;
            for (; i < V; ++i) {
                if (++dec[i] < n) break;
                dec[i] = 0;
            }
            if (i == V) break;
        }
    }
    return res;
}

}  // namespace gwcrc
