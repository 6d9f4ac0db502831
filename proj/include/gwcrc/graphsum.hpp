#pragma once

#include "gwcrc/modcurves.hpp"
#include "gwcrc/rmatrix.hpp"

namespace gwcrc {

// Connected stable graph of total genus g with m labeled legs.
struct StableGraph {
    long g = 0;
    long m = 0;
    std::vector<long> genus;              // per vertex
    std::vector<long> legv;               // leg index -> vertex
    std::vector<std::vector<long>> mult;  // symmetric; diagonal = loop count
    long aut = 1;

    long num_vertices() const { return static_cast<long>(genus.size()); }
    long num_edges() const {
        long e = 0;
        long v = num_vertices();
        for (long u = 0; u < v; ++u)
            for (long w = u; w < v; ++w) e += mult[u][w];
        return e;
    }
    // flags at vertex u: legs + edge ends (loops count twice)
    long valence(long u) const {
        long val = 2 * mult[u][u];
        for (long w = 0; w < num_vertices(); ++w)
            if (w != u) val += mult[u][w];
        for (long l : legv)
            if (l == u) ++val;
        return val;
    }
};

std::vector<StableGraph> enumerate_stable_graphs(long g, long m);

// Generator backend for contribution formulas: a table of the series the
// pieces are made of, plus the sign convention of the formulas. The mapped
// backend feeds the first target's formulas with rescaled second-target data.
struct GraphGens {
    long n = 0;
    char var = 'q';
    long trunc = 0;
    long kmax = 0;
    bool kp_signs = true;
    std::vector<std::vector<std::vector<QSeries>>> Pt;  // [k][i][j]
    std::vector<QSeries> kratio;                        // K_i / L^i, i < n
    CycNum isg;                                         // g(e,e)^{-1/2} branch
};

GraphGens make_generators(const FrobeniusData& f, const PTable& p);

// Backend for the transported first-target pieces: row-0 polynomial fits in
// the first target's L are rescaled by L -> -(rho/n) L, evaluated on the
// second target's L-series, and the remaining rows are rebuilt with the
// transported flatness chain (each derivative and A-term picks up 1/rho).
GraphGens make_upsilon_generators(const FrobeniusData& forb,
                                  const std::vector<std::vector<LPoly>>& kp_fits,
                                  const CycNum& rho, long kmax);

// Pieces: leg with insertion class c and psi-power a at decoration p; edge
// between decorations p1, p2 with psi-powers b1, b2; vertex of genus gv at
// decoration p with fixed flag psi-powers (tail insertions summed inside).
QSeries leg_factor(const GraphGens& G, long c, long a, long p);
QSeries edge_factor(const GraphGens& G, long p1, long b1, long p2, long b2);
QSeries vertex_factor(const GraphGens& G, long gv, long p,
                      const std::vector<long>& flags);

// Full contribution of one decorated graph (legs carry classes ins).
QSeries contribution(const GraphGens& G, const StableGraph& sg,
                     const std::vector<long>& dec, const std::vector<long>& ins);

// Sum over stable graphs and decorations, weighted by 1/|Aut|.
QSeries graph_sum(const GraphGens& G, long g, const std::vector<long>& ins);

struct CrcCheck {
    bool ok = false;
    long decorated = 0;  // decorated graphs compared
};

// Contribution-wise comparison of the second target's (g, ins) sum against
// the rescaled image of the first target's, at the given series order.
CrcCheck verify_crc(long n, long g, const std::vector<long>& ins, long order,
                    const CycNum& rho, long check_order);

}  // namespace gwcrc
