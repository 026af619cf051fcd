// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. Heavier than the unit suites; wall-clock budgets are checked
// where the criterion specifies one.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "scamnet/balance.hpp"
#include "scamnet/eval.hpp"
#include "scamnet/ingest.hpp"
#include "scamnet/nn.hpp"
#include "scamnet/pipeline.hpp"
#include "scamnet/synth.hpp"
#include "scamnet/topo.hpp"

using namespace scamnet;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void verdict(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("%s [%d] %s%s%s\n", ok ? "PASS" : "FAIL", idx, name,
                detail.empty() ? "" : " — ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// |a-f| / max(|a|, |f|, 1): guards against division by vanishing gradients.
double rel_err(double a, double f) {
    return std::abs(a - f) / std::max({std::abs(a), std::abs(f), 1.0});
}

// Central difference with step-size fallback: a ReLU kink inside the probe
// interval corrupts the quotient at one step size but not at a smaller one,
// while a genuine gradient bug fails at every step size.
template <typename LossFn>
double fd_rel_err(LossFn&& loss, double& param, double analytic) {
    double best = 1e300;
    for (double eps : {1e-5, 1e-6, 1e-7}) {
        double saved = param;
        param = saved + eps;
        double up = loss();
        param = saved - eps;
        double dn = loss();
        param = saved;
        best = std::min(best, rel_err(analytic, (up - dn) / (2 * eps)));
        if (best < 1e-7) break;
    }
    return best;
}

void criterion_1_oracles() {
    auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    double worst_pr = 0, worst_hits = 0;
    bool paths_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
        int n = 5 + rng.uniform_int(46);
        auto g = oracles::random_digraph(n, 0.15, rng);
        auto pr = pagerank(g);
        auto pr_oracle = oracles::pagerank_dense(g);
        auto h = hits(g, 1e-14, 5000);
        auto h_oracle = oracles::hits_dense(g);
        auto d = oracles::floyd_warshall(g);
        for (int v = 0; v < g.node_count(); ++v) {
            size_t sv = static_cast<size_t>(v);
            worst_pr = std::max(worst_pr, std::abs(pr.scores[sv] - pr_oracle[sv]));
            worst_hits = std::max(worst_hits, std::abs(h.hub[sv] - h_oracle.hub[sv]));
            worst_hits = std::max(worst_hits, std::abs(h.authority[sv] - h_oracle.authority[sv]));
            int out_reach = 0, in_reach = 0;
            double om = 0, os = 0, im = 0, is = 0;
            for (int u = 0; u < g.node_count(); ++u) {
                if (u == v) continue;
                int dv = d[sv][static_cast<size_t>(u)];
                if (dv > 0) { ++out_reach; os += dv; om = std::max(om, double(dv)); }
                int du = d[static_cast<size_t>(u)][sv];
                if (du > 0) { ++in_reach; is += du; im = std::max(im, double(du)); }
            }
            auto r = reachability_counts(g, v);
            auto p = shortest_path_stats(g, v);
            if (r.outbound != out_reach || r.inbound != in_reach || p.out_max != om ||
                p.out_sum != os || p.in_max != im || p.in_sum != is)
                paths_ok = false;
        }
    }
    double elapsed = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "pagerank max err %.2e, hits max err %.2e, paths %s, %.1fs",
                  worst_pr, worst_hits, paths_ok ? "exact" : "MISMATCH", elapsed);
    verdict(1, "oracle equivalence on 50 random digraphs",
            worst_pr < 1e-8 && worst_hits < 1e-6 && paths_ok && elapsed < 10.0, buf);
}

void criterion_2_table_consistency() {
    auto f1_from = [](double p, double r) { return 2 * p * r / (p + r); };
    double mlp_f1 = f1_from(91.3, 89.7);
    double gcn_f1 = f1_from(85.2, 82.4);
    // The metrics module agrees with the closed form on an exact confusion
    // matrix realizing each precision/recall pair.
    Metrics m1 = metrics({897, 85, 103, 5000});  // P=.9134, R=.897
    bool module_ok = std::abs(m1.f1 - f1_from(m1.precision, m1.recall)) < 1e-12;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "f1(91.3,89.7)=%.3f vs 90.5, f1(85.2,82.4)=%.3f vs 83.8",
                  mlp_f1, gcn_f1);
    verdict(2, "published-rate internal consistency",
            std::abs(mlp_f1 - 90.5) < 0.05 && std::abs(gcn_f1 - 83.8) < 0.05 && module_ok, buf);
}

void criterion_3_gradients() {
    auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (int seed = 0; seed < 20; ++seed) {
        Rng rng(static_cast<std::uint64_t>(2000 + seed));
        TrainConfig cfg;  // Table-1 shapes: 13->32->1 and 13->64x5->1
        auto mp = init_mlp(cfg, rng);
        Matrix x(4, kFeatureDim);
        for (double& v : x.data) v = rng.normal();
        std::vector<int> y{1, 0, 1, 0};
        const double wd = 1e-5;
        auto mg = mlp_backward(mp, x, y, wd);
        std::vector<Matrix*> params{&mp.w1, &mp.b1, &mp.w2, &mp.b2};
        std::vector<Matrix*> grads{&mg.w1, &mg.b1, &mg.w2, &mg.b2};
        auto mlp_loss_of = [&]() { return bce_loss(mlp_forward(mp, x), y) + l2_penalty(mp, wd); };
        for (size_t t = 0; t < params.size(); ++t)
            for (size_t i = 0; i < params[t]->data.size(); ++i)
                worst = std::max(worst,
                                 fd_rel_err(mlp_loss_of, params[t]->data[i], grads[t]->data[i]));

        auto gp = init_gcn(cfg, rng);
        std::vector<ContractEdge> edges{{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {0, 4, 1}};
        auto adj = gcn_normalize_adjacency(edges, 5);
        Matrix gx(5, kFeatureDim);
        for (double& v : gx.data) v = rng.normal();
        std::vector<int> labels{1, 0, 1, 0, 1};
        std::vector<int> loss_nodes{0, 1, 2, 3, 4};
        auto loss_of = [&]() {
            Matrix out = gcn_forward(gp, adj, gx);
            return bce_loss(out, labels) + l2_penalty(gp, wd);
        };
        auto gg = gcn_backward(gp, adj, gx, labels, loss_nodes, wd);
        for (size_t li = 0; li < gp.layers.size(); ++li)
            for (Matrix GcnLayer::* member : {&GcnLayer::w, &GcnLayer::b}) {
                Matrix& param = gp.layers[li].*member;
                Matrix& grad = gg.layers[li].*member;
                for (size_t i = 0; i < param.data.size(); ++i)
                    worst = std::max(worst, fd_rel_err(loss_of, param.data[i], grad.data[i]));
            }
    }
    double elapsed = seconds_since(t0);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max relative error %.2e over 20 seeds, %.1fs", worst, elapsed);
    verdict(3, "analytic gradients vs finite differences", worst < 1e-6 && elapsed < 30.0, buf);
}

void criterion_4_resampling() {
    Rng rng(3001);
    bool convex_ok = true, enn_ok = true;
    int synth_checked = 0;
    for (int trial = 0; trial < 20; ++trial) {
        LabeledSamples s;
        const int n = 50;
        int n_pos = 5 + rng.uniform_int(11);
        for (int i = 0; i < n; ++i) {
            std::vector<double> row(4);
            for (double& v : row) v = rng.normal();
            s.features.push_back(row);
            s.labels.push_back(i < n_pos ? 1 : 0);
            s.provenance.push_back(Provenance::Original);
        }
        std::vector<std::vector<double>> minority(s.features.begin(),
                                                  s.features.begin() + n_pos);
        auto out = smote(s, 5, 1.0, static_cast<std::uint64_t>(trial));
        for (size_t i = s.features.size(); i < out.features.size(); ++i) {
            const auto& r = out.features[i];
            bool on_segment = false;
            for (size_t a = 0; a < minority.size() && !on_segment; ++a)
                for (size_t b = 0; b < minority.size() && !on_segment; ++b) {
                    if (a == b) continue;
                    double lambda = -1;
                    bool ok = true;
                    for (size_t j = 0; j < r.size() && ok; ++j) {
                        double span = minority[b][j] - minority[a][j];
                        if (std::abs(span) < 1e-12) {
                            if (std::abs(r[j] - minority[a][j]) > 1e-9) ok = false;
                            continue;
                        }
                        double l = (r[j] - minority[a][j]) / span;
                        if (lambda < 0) lambda = l;
                        else if (std::abs(l - lambda) > 1e-8) ok = false;
                    }
                    if (ok && lambda >= -1e-9 && lambda <= 1 + 1e-9) on_segment = true;
                }
            if (!on_segment) convex_ok = false;
            ++synth_checked;
        }
        // Brute-force ENN oracle.
        auto dist2 = [&](size_t a, size_t b) {
            double d = 0;
            for (size_t j = 0; j < s.features[a].size(); ++j)
                d += (s.features[a][j] - s.features[b][j]) * (s.features[a][j] - s.features[b][j]);
            return d;
        };
        std::vector<char> keep(n, 1);
        for (size_t i = 0; i < static_cast<size_t>(n); ++i) {
            std::vector<std::pair<double, size_t>> ds;
            for (size_t j = 0; j < static_cast<size_t>(n); ++j)
                if (j != i) ds.push_back({dist2(i, j), j});
            std::sort(ds.begin(), ds.end());
            int agree = 0, disagree = 0;
            for (int t = 0; t < 3; ++t)
                (s.labels[ds[static_cast<size_t>(t)].second] == s.labels[i] ? agree : disagree)++;
            if (disagree > agree) keep[i] = 0;
        }
        LabeledSamples expected;
        for (size_t i = 0; i < static_cast<size_t>(n); ++i)
            if (keep[i]) {
                expected.features.push_back(s.features[i]);
                expected.labels.push_back(s.labels[i]);
            }
        try {
            auto pruned = enn(s, 3);
            if (pruned.features != expected.features || pruned.labels != expected.labels)
                enn_ok = false;
        } catch (const DataError&) {
            if (!expected.features.empty()) enn_ok = false;
        }
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d synthetic rows convex, ENN oracle on 20 datasets %s",
                  synth_checked, enn_ok ? "exact" : "MISMATCH");
    verdict(4, "SMOTE/ENN correctness", convex_ok && enn_ok && synth_checked > 0, buf);
}

struct PanelResult {
    std::vector<double> mlp_f1, gcn_f1;
    std::vector<std::string> out_dirs;
    PipelineConfig first_cfg;
    double elapsed = 0;
};

PanelResult run_panel() {
    PanelResult panel;
    auto t0 = std::chrono::steady_clock::now();
    fs::path root = fs::temp_directory_path() / "scamnet_acceptance";
    fs::remove_all(root);
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        fs::path dir = root / ("seed_" + std::to_string(seed));
        fs::create_directories(dir);
        PipelineConfig cfg;
        cfg.transactions_path = (dir / "transactions.csv").string();
        cfg.kinds_path = (dir / "kinds.csv").string();
        cfg.labels_path = (dir / "labels.csv").string();
        cfg.out_dir = (dir / "out").string();
        cfg.seed = seed;
        cfg.train.rng_seed = seed;
        cfg.synth.seed = seed;
        cfg.train.mlp_epochs = 1000;  // reduced per the runtime allowance
        cfg.train.gcn_epochs = 200;
        run_synth(cfg);
        run_pipeline(cfg);
        auto mlp = nlohmann::json::parse(read_file(cfg.out_dir + "/mlp_eval.json"));
        auto gcn = nlohmann::json::parse(read_file(cfg.out_dir + "/gcn_eval.json"));
        panel.mlp_f1.push_back(mlp.at("metrics").at("f1").get<double>());
        panel.gcn_f1.push_back(gcn.at("metrics").at("f1").get<double>());
        panel.out_dirs.push_back(cfg.out_dir);
        if (seed == 1) panel.first_cfg = cfg;
    }
    panel.elapsed = seconds_since(t0);
    return panel;
}

void criterion_5_end_to_end(const PanelResult& panel) {
    double min_f1 = *std::min_element(panel.mlp_f1.begin(), panel.mlp_f1.end());
    char buf[160];
    std::snprintf(buf, sizeof(buf), "MLP F1 per seed min %.3f (all: %.3f %.3f %.3f %.3f %.3f), %.0fs",
                  min_f1, panel.mlp_f1[0], panel.mlp_f1[1], panel.mlp_f1[2], panel.mlp_f1[3],
                  panel.mlp_f1[4], panel.elapsed);
    verdict(5, "synthetic end-to-end panel", min_f1 >= 0.80 && panel.elapsed < 180.0, buf);
}

void criterion_6_ordering(const PanelResult& panel) {
    double mlp_mean = 0, gcn_mean = 0;
    for (double f : panel.mlp_f1) mlp_mean += f;
    for (double f : panel.gcn_f1) gcn_mean += f;
    mlp_mean /= 5;
    gcn_mean /= 5;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "mean MLP F1 %.3f vs mean GCN F1 %.3f, margin %+.3f",
                  mlp_mean, gcn_mean, mlp_mean - gcn_mean);
    verdict(6, "architecture ordering (MLP >= GCN)", mlp_mean >= gcn_mean, buf);
}

void criterion_7_determinism(const PanelResult& panel) {
    PipelineConfig cfg = panel.first_cfg;
    std::string first_report = read_file(cfg.out_dir + "/report.json");
    run_synth(cfg);
    run_pipeline(cfg);
    bool report_ok = read_file(cfg.out_dir + "/report.json") == first_report;

    // Prune invariance under record shuffling.
    Rng rng(7001);
    auto g = oracles::random_digraph(60, 0.05, rng);
    std::vector<TxRecord> records;
    for (int u = 0; u < g.node_count(); ++u)
        for (const auto& [v, w] : g.out_edges(u)) {
            TxRecord r;
            r.from_address = g.address(u);
            r.to_address = g.address(v);
            r.value_wei = w;
            records.push_back(r);
        }
    std::string baseline = graph_to_json(prune_low_degree(build_graph(records, {}), 2));
    bool shuffle_ok = true;
    for (int trial = 0; trial < 10; ++trial) {
        for (size_t i = records.size(); i > 1; --i)
            std::swap(records[i - 1],
                      records[static_cast<size_t>(rng.uniform_int(static_cast<int>(i)))]);
        if (graph_to_json(prune_low_degree(build_graph(records, {}), 2)) != baseline)
            shuffle_ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "report.json rerun %s, prune shuffle-invariant %s",
                  report_ok ? "byte-identical" : "DIFFERS", shuffle_ok ? "yes" : "NO");
    verdict(7, "determinism", report_ok && shuffle_ok, buf);
}

void criterion_8_prune_invariant(const PanelResult& panel) {
    bool ok = true;
    long long nodes_checked = 0;
    for (const auto& out_dir : panel.out_dirs) {
        auto g = graph_from_json(read_file(out_dir + "/graph.json"));
        for (int v = 0; v < g.node_count(); ++v, ++nodes_checked)
            if (g.total_degree(v) < 2) ok = false;
    }
    Rng rng(8001);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = oracles::random_digraph(3 + rng.uniform_int(48), 0.08, rng);
        auto p = prune_low_degree(g, 2);
        for (int v = 0; v < p.node_count(); ++v, ++nodes_checked)
            if (p.total_degree(v) < 2) ok = false;
    }
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%lld pruned nodes checked, all combined degree >= 2",
                  nodes_checked);
    verdict(8, "prune invariant", ok && nodes_checked > 0, buf);
}

}  // namespace

int main() {
    criterion_1_oracles();
    criterion_2_table_consistency();
    criterion_3_gradients();
    criterion_4_resampling();
    PanelResult panel = run_panel();
    criterion_5_end_to_end(panel);
    criterion_6_ordering(panel);
    criterion_7_determinism(panel);
    criterion_8_prune_invariant(panel);
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
