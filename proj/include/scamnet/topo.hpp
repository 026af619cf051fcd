#pragma once

#include <array>
#include <string>
#include <vector>

#include "scamnet/graph.hpp"

namespace scamnet {

inline constexpr int kFeatureDim = 13;

// Canonical feature order:
//   0 in-degree, 1 out-degree, 2 total degree,
//   3 PageRank, 4 HITS hub, 5 HITS authority,
//   6 inbound reach count, 7 outbound reach count,
//   8 in shortest-path max, 9 in shortest-path sum,
//   10 out shortest-path max, 11 out shortest-path sum,
//   12 log10(1 + Wei throughput)
extern const std::array<const char*, kFeatureDim> kFeatureNames;

using FeatureRow = std::array<double, kFeatureDim>;

struct NormStats {
    std::array<double, kFeatureDim> mean{};
    std::array<double, kFeatureDim> std{};  // population std
};

struct FeatureMatrix {
    std::vector<std::string> addresses;  // graph node order
    std::vector<FeatureRow> rows;
    bool normalized = false;
    NormStats stats;  // valid when normalized or after fit
    std::string feature_order_version = kFeatureOrderVersion;

    int index_of(const std::string& addr) const;
};

struct DegreeTriple {
    int in = 0;
    int out = 0;
    int total = 0;
};

struct PageRankResult {
    std::vector<double> scores;  // graph node order, sums to 1
    bool converged = false;
    int iterations = 0;
};

struct HitsResult {
    std::vector<double> hub;
    std::vector<double> authority;
    bool has_edges = false;  // all-zero vectors when false
    bool converged = false;
    int iterations = 0;
};

struct ReachCounts {
    int inbound = 0;
    int outbound = 0;
};

struct PathStats {
    double in_max = 0, in_sum = 0, out_max = 0, out_sum = 0;
};

DegreeTriple degree_features(const TxGraph& g, int v);

// Power iteration on the unweighted out-link structure, uniform teleport,
// dangling mass redistributed uniformly. Converged when L1 change < tol.
PageRankResult pagerank(const TxGraph& g, double damping = 0.85, double tol = 1e-10,
                        int max_iter = 200);

// Classical HITS: a <- A^T h, h <- A a, L2-normalizing each step.
HitsResult hits(const TxGraph& g, double tol = 1e-10, int max_iter = 200);

ReachCounts reachability_counts(const TxGraph& g, int v);

// Unweighted BFS hop distances; unreachable nodes excluded; (0,0) when no
// node is reachable in a direction.
PathStats shortest_path_stats(const TxGraph& g, int v);

// log10(1 + sum of inbound and outbound edge weights); self-loops count on
// both sides.
double value_throughput(const TxGraph& g, int v);

// Raw (unnormalized) 13-feature rows for every node.
FeatureMatrix assemble_features(const TxGraph& g);

// Per-column z-score with population std; columns with std < 1e-12 map to
// zeros. Needs >= 2 rows to fit.
FeatureMatrix fit_normalize(const FeatureMatrix& m);
FeatureMatrix apply_normalize(const FeatureMatrix& m, const NormStats& stats);

// CSV `address,f0..f12` plus sidecar JSON with feature_order_version and
// norm_stats.
std::string features_to_csv(const FeatureMatrix& m);
std::string feature_sidecar_json(const FeatureMatrix& m, const std::string& config_hash);
FeatureMatrix features_from_csv(const std::string& csv_text, const std::string& sidecar_json);

int resolve_node(const TxGraph& g, const std::string& addr);  // throws DataError if absent

}  // namespace scamnet
