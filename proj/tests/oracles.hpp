// Test-only oracles, deliberately independent of the library's algorithms:
// dense-matrix PageRank, eigenvector HITS, and Floyd-Warshall closures.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "scamnet/graph.hpp"
#include "scamnet/ingest.hpp"
#include "scamnet/rng.hpp"

namespace oracles {

using scamnet::Rng;
using scamnet::TxGraph;

inline std::vector<std::vector<double>> dense_adjacency(const TxGraph& g) {
    const int n = g.node_count();
    std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : g.out_edges(u)) a[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1.0;
    return a;
}

// PageRank via the explicit dense Google matrix, iterated far past the
// library's tolerance.
inline std::vector<double> pagerank_dense(const TxGraph& g, double d = 0.85, int iters = 2000) {
    const int n = g.node_count();
    auto a = dense_adjacency(g);
    // Column-stochastic transition with dangling columns replaced by 1/n.
    std::vector<std::vector<double>> google(static_cast<size_t>(n),
                                            std::vector<double>(static_cast<size_t>(n), 0.0));
    for (int u = 0; u < n; ++u) {
        double out = 0.0;
        for (int v = 0; v < n; ++v) out += a[static_cast<size_t>(u)][static_cast<size_t>(v)];
        for (int v = 0; v < n; ++v) {
            double p = out > 0 ? a[static_cast<size_t>(u)][static_cast<size_t>(v)] / out : 1.0 / n;
            google[static_cast<size_t>(v)][static_cast<size_t>(u)] = d * p + (1.0 - d) / n;
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 1.0 / n), y(static_cast<size_t>(n));
    for (int it = 0; it < iters; ++it) {
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j)
                s += google[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
            y[static_cast<size_t>(i)] = s;
        }
        x = y;
    }
    return x;
}

// HITS via long power iteration on the dense A^T A and A A^T matrices.
struct HitsOracle {
    std::vector<double> hub;
    std::vector<double> authority;
};

inline HitsOracle hits_dense(const TxGraph& g, int iters = 5000) {
    const int n = g.node_count();
    auto a = dense_adjacency(g);
    auto mat_vec = [&](bool transpose_first, const std::vector<double>& x) {
        // transpose_first: y = A^T (A x) -> hub iteration uses A A^T.
        std::vector<double> tmp(static_cast<size_t>(n), 0.0), y(static_cast<size_t>(n), 0.0);
        if (transpose_first) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    tmp[static_cast<size_t>(i)] += a[static_cast<size_t>(j)][static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    y[static_cast<size_t>(i)] += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * tmp[static_cast<size_t>(j)];
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    tmp[static_cast<size_t>(i)] += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)];
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    y[static_cast<size_t>(i)] += a[static_cast<size_t>(j)][static_cast<size_t>(i)] * tmp[static_cast<size_t>(j)];
        }
        return y;
    };
    auto normalize = [](std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        s = std::sqrt(s);
        if (s > 0)
            for (double& x : v) x /= s;
    };
    HitsOracle out;
    out.hub.assign(static_cast<size_t>(n), 1.0);
    normalize(out.hub);
    for (int it = 0; it < iters; ++it) {
        out.hub = mat_vec(true, out.hub);  // h <- A A^T h
        normalize(out.hub);
    }
    out.authority.assign(static_cast<size_t>(n), 0.0);
    // a = A^T h, normalized, ties the two eigenvectors together the same way
    // the coupled iteration does.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.authority[static_cast<size_t>(i)] += a[static_cast<size_t>(j)][static_cast<size_t>(i)] * out.hub[static_cast<size_t>(j)];
    normalize(out.authority);
    return out;
}

// Floyd-Warshall hop distances; -1 means unreachable.
inline std::vector<std::vector<int>> floyd_warshall(const TxGraph& g) {
    const int n = g.node_count();
    const int inf = std::numeric_limits<int>::max() / 2;
    std::vector<std::vector<int>> d(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n), inf));
    for (int v = 0; v < n; ++v) d[static_cast<size_t>(v)][static_cast<size_t>(v)] = 0;
    for (int u = 0; u < n; ++u)
        for (const auto& [v, w] : g.out_edges(u))
            if (u != v) d[static_cast<size_t>(u)][static_cast<size_t>(v)] = 1;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (d[static_cast<size_t>(i)][static_cast<size_t>(k)] + d[static_cast<size_t>(k)][static_cast<size_t>(j)] <
                    d[static_cast<size_t>(i)][static_cast<size_t>(j)])
                    d[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        d[static_cast<size_t>(i)][static_cast<size_t>(k)] + d[static_cast<size_t>(k)][static_cast<size_t>(j)];
    for (auto& row : d)
        for (int& x : row)
            if (x >= inf) x = -1;
    return d;
}

inline std::string test_address(int i) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "0x%040x", static_cast<unsigned>(i) + 1);
    return buf;
}

// Random simple digraph with n nodes and roughly edge_prob density.
inline TxGraph random_digraph(int n, double edge_prob, Rng& rng, double contract_fraction = 0.0) {
    std::vector<scamnet::TxRecord> records;
    scamnet::KindMap kinds;
    for (int i = 0; i < n; ++i) {
        kinds[test_address(i)] =
            rng.uniform() < contract_fraction ? scamnet::NodeKind::Contract : scamnet::NodeKind::Eoa;
    }
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            if (u == v || rng.uniform() >= edge_prob) continue;
            scamnet::TxRecord r;
            r.from_address = test_address(u);
            r.to_address = test_address(v);
            r.value_wei = 1 + static_cast<scamnet::Wei>(rng.uniform_int(1000));
            records.push_back(r);
        }
    if (records.empty()) {
        scamnet::TxRecord r;
        r.from_address = test_address(0);
        r.to_address = test_address(n > 1 ? 1 : 0);
        r.value_wei = 1;
        records.push_back(r);
    }
    return scamnet::build_graph(records, kinds);
}

}  // namespace oracles
