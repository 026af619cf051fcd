#include "scamnet/topo.hpp"

#include <cmath>
#include <cstdio>
#include <deque>
#include <sstream>

#include <json.hpp>

namespace scamnet {

const std::array<const char*, kFeatureDim> kFeatureNames = {
    "in_degree",     "out_degree",   "total_degree", "pagerank",     "hits_hub",
    "hits_authority", "reach_in",    "reach_out",    "spath_in_max", "spath_in_sum",
    "spath_out_max", "spath_out_sum", "log_wei_throughput"};

int FeatureMatrix::index_of(const std::string& addr) const {
    for (size_t i = 0; i < addresses.size(); ++i)
        if (addresses[i] == addr) return static_cast<int>(i);
    return -1;
}

int resolve_node(const TxGraph& g, const std::string& addr) {
    int v = g.index_of(addr);
    if (v < 0) throw DataError("node not in graph: " + addr);
    return v;
}

DegreeTriple degree_features(const TxGraph& g, int v) {
    DegreeTriple d;
    d.in = g.in_degree(v);
    d.out = g.out_degree(v);
    d.total = d.in + d.out;
    return d;
}

PageRankResult pagerank(const TxGraph& g, double damping, double tol, int max_iter) {
    const int n = g.node_count();
    if (n == 0) throw DataError("pagerank on empty graph");
    PageRankResult res;
    std::vector<double> x(static_cast<size_t>(n), 1.0 / n);
    std::vector<double> next(static_cast<size_t>(n));
    for (int it = 1; it <= max_iter; ++it) {
        double dangling = 0.0;
        for (int v = 0; v < n; ++v)
            if (g.out_degree(v) == 0) dangling += x[static_cast<size_t>(v)];
        const double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (int v = 0; v < n; ++v) {
            const auto& out = g.out_edges(v);
            if (out.empty()) continue;
            double share = damping * x[static_cast<size_t>(v)] / static_cast<double>(out.size());
            for (const auto& [u, w] : out) next[static_cast<size_t>(u)] += share;
        }
        double change = 0.0;
        for (int v = 0; v < n; ++v) change += std::abs(next[static_cast<size_t>(v)] - x[static_cast<size_t>(v)]);
        x.swap(next);
        res.iterations = it;
        if (change < tol) {
            res.converged = true;
            break;
        }
    }
    res.scores = std::move(x);
    return res;
}

HitsResult hits(const TxGraph& g, double tol, int max_iter) {
    const int n = g.node_count();
    if (n == 0) throw DataError("hits on empty graph");
    HitsResult res;
    res.hub.assign(static_cast<size_t>(n), 0.0);
    res.authority.assign(static_cast<size_t>(n), 0.0);
    if (g.edge_count() == 0) return res;  // has_edges stays false
    res.has_edges = true;

    std::vector<double> h(static_cast<size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> a(static_cast<size_t>(n), 0.0);
    auto l2_normalize = [](std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x * x;
        s = std::sqrt(s);
        if (s > 0.0)
            for (double& x : v) x /= s;
    };
    std::vector<double> prev_h = h, prev_a = a;
    for (int it = 1; it <= max_iter; ++it) {
        std::fill(a.begin(), a.end(), 0.0);
        for (int v = 0; v < n; ++v)
            for (const auto& [u, w] : g.out_edges(v))
                a[static_cast<size_t>(u)] += h[static_cast<size_t>(v)];
        l2_normalize(a);
        std::fill(h.begin(), h.end(), 0.0);
        for (int v = 0; v < n; ++v)
            for (const auto& [u, w] : g.out_edges(v))
                h[static_cast<size_t>(v)] += a[static_cast<size_t>(u)];
        l2_normalize(h);
        double change = 0.0;
        for (int v = 0; v < n; ++v)
            change += std::abs(h[static_cast<size_t>(v)] - prev_h[static_cast<size_t>(v)]) +
                      std::abs(a[static_cast<size_t>(v)] - prev_a[static_cast<size_t>(v)]);
        prev_h = h;
        prev_a = a;
        res.iterations = it;
        if (change < tol) {
            res.converged = true;
            break;
        }
    }
    res.hub = std::move(h);
    res.authority = std::move(a);
    return res;
}

namespace {

// BFS from v following out-edges (forward=true) or in-edges. Returns the
// count of reached nodes (excluding v) plus max and sum of hop distances.
struct BfsStats {
    int count = 0;
    double max_dist = 0;
    double sum_dist = 0;
};

BfsStats bfs_stats(const TxGraph& g, int v, bool forward) {
    std::vector<int> dist(static_cast<size_t>(g.node_count()), -1);
    std::deque<int> queue;
    dist[static_cast<size_t>(v)] = 0;
    queue.push_back(v);
    BfsStats s;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        const auto& edges = forward ? g.out_edges(u) : g.in_edges(u);
        for (const auto& [t, w] : edges) {
            if (dist[static_cast<size_t>(t)] >= 0) continue;
            dist[static_cast<size_t>(t)] = dist[static_cast<size_t>(u)] + 1;
            ++s.count;
            s.sum_dist += dist[static_cast<size_t>(t)];
            if (dist[static_cast<size_t>(t)] > s.max_dist) s.max_dist = dist[static_cast<size_t>(t)];
            queue.push_back(t);
        }
    }
    return s;
}

}  // namespace

ReachCounts reachability_counts(const TxGraph& g, int v) {
    ReachCounts r;
    r.outbound = bfs_stats(g, v, true).count;
    r.inbound = bfs_stats(g, v, false).count;
    return r;
}

PathStats shortest_path_stats(const TxGraph& g, int v) {
    PathStats p;
    BfsStats fwd = bfs_stats(g, v, true);
    BfsStats bwd = bfs_stats(g, v, false);
    p.out_max = fwd.max_dist;
    p.out_sum = fwd.sum_dist;
    p.in_max = bwd.max_dist;
    p.in_sum = bwd.sum_dist;
    return p;
}

double value_throughput(const TxGraph& g, int v) {
    Wei total = 0;
    for (const auto& [u, w] : g.in_edges(v)) total += w;
    for (const auto& [u, w] : g.out_edges(v)) total += w;
    // Wei fits in 128 bits; convert via long double for the log.
    return std::log10(1.0L + static_cast<long double>(total));
}

FeatureMatrix assemble_features(const TxGraph& g) {
    if (g.node_count() == 0) throw DataError("assemble_features on empty graph");
    FeatureMatrix m;
    m.addresses = g.addresses();
    m.rows.resize(static_cast<size_t>(g.node_count()));

    PageRankResult pr = pagerank(g);
    HitsResult ha = hits(g);
    for (int v = 0; v < g.node_count(); ++v) {
        FeatureRow& row = m.rows[static_cast<size_t>(v)];
        DegreeTriple d = degree_features(g, v);
        row[0] = d.in;
        row[1] = d.out;
        row[2] = d.total;
        row[3] = pr.scores[static_cast<size_t>(v)];
        row[4] = ha.hub[static_cast<size_t>(v)];
        row[5] = ha.authority[static_cast<size_t>(v)];
        BfsStats fwd = bfs_stats(g, v, true);
        BfsStats bwd = bfs_stats(g, v, false);
        row[6] = bwd.count;
        row[7] = fwd.count;
        row[8] = bwd.max_dist;
        row[9] = bwd.sum_dist;
        row[10] = fwd.max_dist;
        row[11] = fwd.sum_dist;
        row[12] = value_throughput(g, v);
    }
    return m;
}

FeatureMatrix fit_normalize(const FeatureMatrix& m) {
    const size_t n = m.rows.size();
    if (n < 2) throw DataError("normalization fit needs at least 2 rows");
    NormStats stats;
    for (int j = 0; j < kFeatureDim; ++j) {
        double mean = 0.0;
        for (const auto& row : m.rows) mean += row[static_cast<size_t>(j)];
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (const auto& row : m.rows) {
            double d = row[static_cast<size_t>(j)] - mean;
            var += d * d;
        }
        stats.mean[static_cast<size_t>(j)] = mean;
        stats.std[static_cast<size_t>(j)] = std::sqrt(var / static_cast<double>(n));
    }
    FeatureMatrix out = apply_normalize(m, stats);
    out.stats = stats;
    return out;
}

FeatureMatrix apply_normalize(const FeatureMatrix& m, const NormStats& stats) {
    FeatureMatrix out;
    out.addresses = m.addresses;
    out.rows = m.rows;
    out.normalized = true;
    out.stats = stats;
    out.feature_order_version = m.feature_order_version;
    for (auto& row : out.rows) {
        for (int j = 0; j < kFeatureDim; ++j) {
            size_t sj = static_cast<size_t>(j);
            if (stats.std[sj] < 1e-12)
                row[sj] = 0.0;
            else
                row[sj] = (row[sj] - stats.mean[sj]) / stats.std[sj];
        }
    }
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string features_to_csv(const FeatureMatrix& m) {
    std::ostringstream out;
    out << "address";
    for (int j = 0; j < kFeatureDim; ++j) out << ",f" << j;
    out << "\n";
    for (size_t i = 0; i < m.rows.size(); ++i) {
        out << m.addresses[i];
        for (int j = 0; j < kFeatureDim; ++j) out << "," << format_double(m.rows[i][static_cast<size_t>(j)]);
        out << "\n";
    }
    return out.str();
}

std::string feature_sidecar_json(const FeatureMatrix& m, const std::string& config_hash) {
    nlohmann::ordered_json doc;
    doc["feature_order_version"] = m.feature_order_version;
    doc["feature_names"] = kFeatureNames;
    doc["normalized"] = m.normalized;
    doc["config_hash"] = config_hash;
    doc["norm_stats"] = nlohmann::ordered_json::array();
    for (int j = 0; j < kFeatureDim; ++j) {
        doc["norm_stats"].push_back({{"mean", m.stats.mean[static_cast<size_t>(j)]},
                                     {"std", m.stats.std[static_cast<size_t>(j)]}});
    }
    return doc.dump(2) + "\n";
}

FeatureMatrix features_from_csv(const std::string& csv_text, const std::string& sidecar_json) {
    FeatureMatrix m;
    nlohmann::json side;
    try {
        side = nlohmann::json::parse(sidecar_json);
    } catch (const std::exception& e) {
        throw DataError(std::string("bad feature sidecar: ") + e.what());
    }
    m.feature_order_version = side.at("feature_order_version").get<std::string>();
    if (m.feature_order_version != kFeatureOrderVersion)
        throw DataError("feature_order_version mismatch: " + m.feature_order_version);
    m.normalized = side.at("normalized").get<bool>();
    const auto& stats = side.at("norm_stats");
    if (stats.size() != kFeatureDim) throw DataError("norm_stats must have 13 entries");
    for (int j = 0; j < kFeatureDim; ++j) {
        m.stats.mean[static_cast<size_t>(j)] = stats[static_cast<size_t>(j)].at("mean").get<double>();
        m.stats.std[static_cast<size_t>(j)] = stats[static_cast<size_t>(j)].at("std").get<double>();
    }

    std::istringstream in(csv_text);
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty feature csv");
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        if (!std::getline(ss, field, ',')) throw DataError("feature csv line " + std::to_string(line_no));
        m.addresses.push_back(field);
        FeatureRow row{};
        for (int j = 0; j < kFeatureDim; ++j) {
            if (!std::getline(ss, field, ','))
                throw DataError("feature csv line " + std::to_string(line_no) + ": missing column");
            row[static_cast<size_t>(j)] = std::stod(field);
        }
        m.rows.push_back(row);
    }
    return m;
}

}  // namespace scamnet
