#include "scamnet/nn.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "scamnet/balance.hpp"
#include "scamnet/eval.hpp"

namespace scamnet {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw DataError("matmul shape mismatch");
    Matrix c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            double aik = a.at(i, k);
            if (aik == 0.0) continue;
            const double* brow = &b.data[static_cast<size_t>(k) * static_cast<size_t>(b.cols)];
            double* crow = &c.data[static_cast<size_t>(i) * static_cast<size_t>(c.cols)];
            for (int j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

Matrix matmul_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows != b.rows) throw DataError("matmul_at_b shape mismatch");
    Matrix c(a.cols, b.cols);
    for (int k = 0; k < a.rows; ++k) {
        const double* arow = &a.data[static_cast<size_t>(k) * static_cast<size_t>(a.cols)];
        const double* brow = &b.data[static_cast<size_t>(k) * static_cast<size_t>(b.cols)];
        for (int i = 0; i < a.cols; ++i) {
            double aki = arow[i];
            if (aki == 0.0) continue;
            double* crow = &c.data[static_cast<size_t>(i) * static_cast<size_t>(c.cols)];
            for (int j = 0; j < b.cols; ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

Matrix matmul_a_bt(const Matrix& a, const Matrix& b) {
    if (a.cols != b.cols) throw DataError("matmul_a_bt shape mismatch");
    Matrix c(a.rows, b.rows);
    for (int i = 0; i < a.rows; ++i) {
        const double* arow = &a.data[static_cast<size_t>(i) * static_cast<size_t>(a.cols)];
        for (int j = 0; j < b.rows; ++j) {
            const double* brow = &b.data[static_cast<size_t>(j) * static_cast<size_t>(b.cols)];
            double s = 0.0;
            for (int k = 0; k < a.cols; ++k) s += arow[k] * brow[k];
            c.at(i, j) = s;
        }
    }
    return c;
}

Matrix NormAdjacency::multiply(const Matrix& x) const {
    if (x.rows != n) throw DataError("adjacency/feature shape mismatch");
    Matrix y(n, x.cols);
    for (int i = 0; i < n; ++i) {
        double* yrow = &y.data[static_cast<size_t>(i) * static_cast<size_t>(x.cols)];
        for (const auto& [j, w] : rows[static_cast<size_t>(i)]) {
            const double* xrow = &x.data[static_cast<size_t>(j) * static_cast<size_t>(x.cols)];
            for (int c = 0; c < x.cols; ++c) yrow[c] += w * xrow[c];
        }
    }
    return y;
}

NormAdjacency gcn_normalize_adjacency(const std::vector<ContractEdge>& edges, int n) {
    NormAdjacency adj;
    adj.n = n;
    adj.rows.assign(static_cast<size_t>(n), {});
    std::vector<int> degree(static_cast<size_t>(n), 1);  // self-loop
    std::vector<std::vector<int>> nbrs(static_cast<size_t>(n));
    for (const auto& e : edges) {
        if (e.a == e.b) continue;  // self-edges enter only via the added loop
        nbrs[static_cast<size_t>(e.a)].push_back(e.b);
        nbrs[static_cast<size_t>(e.b)].push_back(e.a);
        ++degree[static_cast<size_t>(e.a)];
        ++degree[static_cast<size_t>(e.b)];
    }
    std::vector<double> inv_sqrt(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        inv_sqrt[static_cast<size_t>(i)] = 1.0 / std::sqrt(static_cast<double>(degree[static_cast<size_t>(i)]));
    for (int i = 0; i < n; ++i) {
        auto& row = adj.rows[static_cast<size_t>(i)];
        std::sort(nbrs[static_cast<size_t>(i)].begin(), nbrs[static_cast<size_t>(i)].end());
        bool self_added = false;
        for (int j : nbrs[static_cast<size_t>(i)]) {
            if (!self_added && j > i) {
                row.emplace_back(i, inv_sqrt[static_cast<size_t>(i)] * inv_sqrt[static_cast<size_t>(i)]);
                self_added = true;
            }
            row.emplace_back(j, inv_sqrt[static_cast<size_t>(i)] * inv_sqrt[static_cast<size_t>(j)]);
        }
        if (!self_added)
            row.emplace_back(i, inv_sqrt[static_cast<size_t>(i)] * inv_sqrt[static_cast<size_t>(i)]);
    }
    return adj;
}

namespace {

void add_bias_relu(Matrix& z, const Matrix& b, bool relu) {
    for (int i = 0; i < z.rows; ++i) {
        for (int j = 0; j < z.cols; ++j) {
            double v = z.at(i, j) + b.at(0, j);
            z.at(i, j) = relu && v < 0.0 ? 0.0 : v;
        }
    }
}

void apply_mask(Matrix& m, const Matrix& mask) {
    if (m.rows != mask.rows || m.cols != mask.cols) throw DataError("dropout mask shape mismatch");
    for (size_t i = 0; i < m.data.size(); ++i) m.data[i] *= mask.data[i];
}

double sigmoid(double z) { return z >= 0.0 ? 1.0 / (1.0 + std::exp(-z)) : std::exp(z) / (1.0 + std::exp(z)); }

}  // namespace

Matrix mlp_forward(const MlpParams& p, const Matrix& x, const Matrix* dropout_mask) {
    if (x.cols != p.w1.cols) throw DataError("mlp_forward: feature dim mismatch");
    Matrix h = matmul_a_bt(x, p.w1);
    add_bias_relu(h, p.b1, true);
    if (dropout_mask) apply_mask(h, *dropout_mask);
    Matrix logits = matmul_a_bt(h, p.w2);
    add_bias_relu(logits, p.b2, false);
    return logits;
}

Matrix gcn_forward(const GcnParams& p, const NormAdjacency& adj, const Matrix& x,
                   const std::vector<Matrix>* dropout_masks) {
    if (x.cols != p.layers.front().w.rows) throw DataError("gcn_forward: feature dim mismatch");
    Matrix h = x;
    const size_t L = p.layers.size();
    for (size_t l = 0; l < L; ++l) {
        Matrix z = matmul(adj.multiply(h), p.layers[l].w);
        bool hidden = l + 1 < L;
        add_bias_relu(z, p.layers[l].b, hidden);
        if (hidden && dropout_masks) apply_mask(z, (*dropout_masks)[l]);
        h = std::move(z);
    }
    return h;
}

double bce_loss(const Matrix& logits, const std::vector<int>& labels) {
    if (logits.rows == 0) throw DataError("bce_loss: empty input");
    if (static_cast<size_t>(logits.rows) != labels.size() || logits.cols != 1)
        throw DataError("bce_loss: shape mismatch");
    double total = 0.0;
    for (int i = 0; i < logits.rows; ++i) {
        double z = logits.at(i, 0);
        double y = labels[static_cast<size_t>(i)];
        // softplus(z) - y*z, stable for large |z|
        double softplus = z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
        total += softplus - y * z;
    }
    return total / logits.rows;
}

double l2_penalty(const MlpParams& p, double wd) {
    double s = 0.0;
    for (const Matrix* m : {&p.w1, &p.b1, &p.w2, &p.b2})
        for (double v : m->data) s += v * v;
    return 0.5 * wd * s;
}

double l2_penalty(const GcnParams& p, double wd) {
    double s = 0.0;
    for (const auto& layer : p.layers) {
        for (double v : layer.w.data) s += v * v;
        for (double v : layer.b.data) s += v * v;
    }
    return 0.5 * wd * s;
}

namespace {

void add_decay(Matrix& grad, const Matrix& param, double wd) {
    for (size_t i = 0; i < grad.data.size(); ++i) grad.data[i] += wd * param.data[i];
}

Matrix colsum(const Matrix& m) {
    Matrix out(1, m.cols);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(0, j) += m.at(i, j);
    return out;
}

}  // namespace

MlpGradients mlp_backward(const MlpParams& p, const Matrix& x, const std::vector<int>& labels,
                          double weight_decay, const Matrix* dropout_mask, double* loss_out) {
    const int n = x.rows;
    Matrix z1 = matmul_a_bt(x, p.w1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < z1.cols; ++j) z1.at(i, j) += p.b1.at(0, j);
    Matrix a1 = z1;
    for (double& v : a1.data) v = v < 0.0 ? 0.0 : v;
    Matrix a1d = a1;
    if (dropout_mask) apply_mask(a1d, *dropout_mask);
    Matrix logits = matmul_a_bt(a1d, p.w2);
    for (int i = 0; i < n; ++i) logits.at(i, 0) += p.b2.at(0, 0);

    if (loss_out) *loss_out = bce_loss(logits, labels) + l2_penalty(p, weight_decay);

    Matrix dz(n, 1);
    for (int i = 0; i < n; ++i)
        dz.at(i, 0) = (sigmoid(logits.at(i, 0)) - labels[static_cast<size_t>(i)]) / n;

    MlpGradients g;
    g.w2 = matmul_at_b(dz, a1d);  // 1 x hidden
    g.b2 = colsum(dz);
    Matrix da1 = matmul(dz, p.w2);  // n x hidden
    if (dropout_mask) apply_mask(da1, *dropout_mask);
    for (size_t i = 0; i < da1.data.size(); ++i)
        if (z1.data[i] <= 0.0) da1.data[i] = 0.0;  // relu'(0) = 0
    g.w1 = matmul_at_b(da1, x);  // hidden x in
    g.b1 = colsum(da1);

    add_decay(g.w1, p.w1, weight_decay);
    add_decay(g.b1, p.b1, weight_decay);
    add_decay(g.w2, p.w2, weight_decay);
    add_decay(g.b2, p.b2, weight_decay);
    return g;
}

GcnGradients gcn_backward(const GcnParams& p, const NormAdjacency& adj, const Matrix& x,
                          const std::vector<int>& labels, const std::vector<int>& loss_nodes,
                          double weight_decay, const std::vector<Matrix>* dropout_masks,
                          double* loss_out) {
    const size_t L = p.layers.size();
    // Forward pass, keeping pre-activations and propagated inputs.
    std::vector<Matrix> inputs;   // H_l (post-activation, post-dropout), l = 0..L-1
    std::vector<Matrix> props;    // P_l = A_hat * H_l
    std::vector<Matrix> preacts;  // Z_l = P_l W_l + b_l
    Matrix h = x;
    for (size_t l = 0; l < L; ++l) {
        inputs.push_back(h);
        Matrix prop = adj.multiply(h);
        Matrix z = matmul(prop, p.layers[l].w);
        for (int i = 0; i < z.rows; ++i)
            for (int j = 0; j < z.cols; ++j) z.at(i, j) += p.layers[l].b.at(0, j);
        props.push_back(std::move(prop));
        preacts.push_back(z);
        bool hidden = l + 1 < L;
        if (hidden) {
            for (double& v : z.data) v = v < 0.0 ? 0.0 : v;
            if (dropout_masks) apply_mask(z, (*dropout_masks)[l]);
        }
        h = std::move(z);
    }
    const Matrix& logits = h;

    if (loss_nodes.empty()) throw DataError("gcn_backward: no loss nodes");
    Matrix center_logits(static_cast<int>(loss_nodes.size()), 1);
    std::vector<int> center_labels;
    for (size_t i = 0; i < loss_nodes.size(); ++i) {
        center_logits.at(static_cast<int>(i), 0) = logits.at(loss_nodes[i], 0);
        center_labels.push_back(labels[static_cast<size_t>(loss_nodes[i])]);
    }
    if (loss_out) *loss_out = bce_loss(center_logits, center_labels) + l2_penalty(p, weight_decay);

    Matrix dh(logits.rows, 1);
    for (size_t i = 0; i < loss_nodes.size(); ++i) {
        int v = loss_nodes[i];
        dh.at(v, 0) = (sigmoid(logits.at(v, 0)) - center_labels[i]) /
                      static_cast<double>(loss_nodes.size());
    }

    GcnGradients g;
    g.layers.resize(L);
    for (size_t li = L; li-- > 0;) {
        bool hidden = li + 1 < L;
        Matrix dz = std::move(dh);
        if (hidden) {
            if (dropout_masks) apply_mask(dz, (*dropout_masks)[li]);
            for (size_t i = 0; i < dz.data.size(); ++i)
                if (preacts[li].data[i] <= 0.0) dz.data[i] = 0.0;
        }
        g.layers[li].w = matmul_at_b(props[li], dz);
        g.layers[li].b = colsum(dz);
        if (li > 0) {
            // dH_l = A_hat^T (dZ W^T); A_hat is symmetric.
            Matrix dz_wt = matmul_a_bt(dz, p.layers[li].w);
            dh = adj.multiply(dz_wt);
        }
        add_decay(g.layers[li].w, p.layers[li].w, weight_decay);
        add_decay(g.layers[li].b, p.layers[li].b, weight_decay);
    }
    return g;
}

void adam_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
               AdamState& state, const TrainConfig& cfg) {
    if (params.size() != grads.size()) throw DataError("adam_step: param/grad count mismatch");
    if (state.m.empty()) {
        for (const Matrix* p : params) {
            state.m.emplace_back(p->rows, p->cols);
            state.v.emplace_back(p->rows, p->cols);
        }
    }
    for (const Matrix* g : grads)
        for (double v : g->data)
            if (!std::isfinite(v)) throw NumericError("non-finite gradient in adam_step");

    ++state.step;
    const double bc1 = 1.0 - std::pow(cfg.adam_beta1, state.step);
    const double bc2 = 1.0 - std::pow(cfg.adam_beta2, state.step);
    for (size_t t = 0; t < params.size(); ++t) {
        Matrix& p = *params[t];
        const Matrix& g = *grads[t];
        Matrix& m = state.m[t];
        Matrix& v = state.v[t];
        for (size_t i = 0; i < p.data.size(); ++i) {
            m.data[i] = cfg.adam_beta1 * m.data[i] + (1.0 - cfg.adam_beta1) * g.data[i];
            v.data[i] = cfg.adam_beta2 * v.data[i] + (1.0 - cfg.adam_beta2) * g.data[i] * g.data[i];
            double mhat = m.data[i] / bc1;
            double vhat = v.data[i] / bc2;
            p.data[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
        }
    }
}

namespace {

Matrix init_uniform(int rows, int cols, int fan_in, Rng& rng) {
    Matrix m(rows, cols);
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (double& v : m.data) v = rng.uniform(-bound, bound);
    return m;
}

Matrix dropout_mask(int rows, int cols, double p, Rng& rng) {
    // Inverted dropout: survivors scaled by 1/(1-p).
    Matrix m(rows, cols);
    const double scale = 1.0 / (1.0 - p);
    for (double& v : m.data) v = rng.uniform() < p ? 0.0 : scale;
    return m;
}

std::vector<Matrix*> mlp_param_ptrs(MlpParams& p) { return {&p.w1, &p.b1, &p.w2, &p.b2}; }

std::vector<const Matrix*> mlp_grad_ptrs(const MlpGradients& g) {
    return {&g.w1, &g.b1, &g.w2, &g.b2};
}

double eval_f1(const Matrix& logits, const std::vector<int>& labels) {
    std::vector<double> probs(static_cast<size_t>(logits.rows));
    for (int i = 0; i < logits.rows; ++i) probs[static_cast<size_t>(i)] = sigmoid(logits.at(i, 0));
    return metrics(confusion(probs, labels)).f1;
}

}  // namespace

MlpParams init_mlp(const TrainConfig& cfg, Rng& rng) {
    MlpParams p;
    p.w1 = init_uniform(cfg.mlp_hidden_dim, kFeatureDim, kFeatureDim, rng);
    p.b1 = init_uniform(1, cfg.mlp_hidden_dim, kFeatureDim, rng);
    p.w2 = init_uniform(1, cfg.mlp_hidden_dim, cfg.mlp_hidden_dim, rng);
    p.b2 = init_uniform(1, 1, cfg.mlp_hidden_dim, rng);
    return p;
}

GcnParams init_gcn(const TrainConfig& cfg, Rng& rng) {
    GcnParams p;
    for (int l = 0; l < cfg.gcn_layers; ++l) {
        int in = l == 0 ? kFeatureDim : cfg.gcn_hidden_dim;
        int out = l == cfg.gcn_layers - 1 ? 1 : cfg.gcn_hidden_dim;
        GcnLayer layer;
        layer.w = init_uniform(in, out, in, rng);
        layer.b = init_uniform(1, out, in, rng);
        p.layers.push_back(std::move(layer));
    }
    return p;
}

ModelBundle train_mlp(const Matrix& features, const std::vector<int>& labels,
                      const TrainConfig& cfg, const NormStats& norm_stats,
                      const Matrix* eval_features, const std::vector<int>* eval_labels) {
    if (features.rows == 0) throw DataError("train_mlp: empty training set");
    bool has_pos = false, has_neg = false;
    for (int l : labels) (l == 1 ? has_pos : has_neg) = true;
    if (!has_pos || !has_neg) throw DataError("train_mlp: both classes required");

    ModelBundle bundle;
    bundle.model_type = "mlp";
    bundle.norm_stats = norm_stats;
    bundle.config = cfg;
    Rng rng(cfg.rng_seed);
    bundle.mlp = init_mlp(cfg, rng);

    AdamState state;
    for (int epoch = 1; epoch <= cfg.mlp_epochs; ++epoch) {
        Matrix mask = dropout_mask(features.rows, cfg.mlp_hidden_dim, cfg.dropout, rng);
        double loss = 0.0;
        MlpGradients grads = mlp_backward(bundle.mlp, features, labels, cfg.weight_decay,
                                          cfg.dropout > 0.0 ? &mask : nullptr, &loss);
        if (!std::isfinite(loss))
            throw NumericError("train_mlp diverged at epoch " + std::to_string(epoch));
        bundle.history.loss.push_back(loss);
        adam_step(mlp_param_ptrs(bundle.mlp), mlp_grad_ptrs(grads), state, cfg);
        if (epoch % 50 == 0 && eval_features && eval_labels) {
            Matrix logits = mlp_forward(bundle.mlp, *eval_features);
            bundle.history.eval_epochs.push_back(epoch);
            bundle.history.eval_f1.push_back(eval_f1(logits, *eval_labels));
        }
    }
    return bundle;
}

ModelBundle train_gcn(const ContractDataset& ds, const std::vector<int>& train_indices,
                      const std::vector<int>& test_indices, const TrainConfig& cfg,
                      const NormStats& norm_stats) {
    const int n = static_cast<int>(ds.contracts.size());
    if (n == 0) throw DataError("train_gcn: empty dataset");

    ModelBundle bundle;
    bundle.model_type = "gcn";
    bundle.norm_stats = norm_stats;
    bundle.config = cfg;
    Rng rng(cfg.rng_seed);
    bundle.gcn = init_gcn(cfg, rng);

    BalancedBatchSampler sampler(ds, train_indices, cfg.gcn_batch_size, 0.5, cfg.gcn_ego_radius,
                                 cfg.rng_seed + 1);
    NormAdjacency full_adj = gcn_normalize_adjacency(ds.edges, n);
    Matrix full_x(n, kFeatureDim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < kFeatureDim; ++j)
            full_x.at(i, j) = ds.features[static_cast<size_t>(i)][static_cast<size_t>(j)];

    AdamState state;
    for (int epoch = 1; epoch <= cfg.gcn_epochs; ++epoch) {
        std::vector<EgoBatch> batch = sampler.next_batch();
        GcnGradients accum;
        double loss_sum = 0.0;
        for (const EgoBatch& ego : batch) {
            const int m = static_cast<int>(ego.node_indices.size());
            std::vector<ContractEdge> local_edges;
            local_edges.reserve(ego.adjacency.size());
            for (const auto& [a, b] : ego.adjacency) local_edges.push_back({a, b, 1});
            NormAdjacency adj = gcn_normalize_adjacency(local_edges, m);
            Matrix x(m, kFeatureDim);
            std::vector<int> local_labels(static_cast<size_t>(m), 0);
            int local_center = -1;
            for (int i = 0; i < m; ++i) {
                int gi = ego.node_indices[static_cast<size_t>(i)];
                for (int j = 0; j < kFeatureDim; ++j)
                    x.at(i, j) = ds.features[static_cast<size_t>(gi)][static_cast<size_t>(j)];
                int l = ds.labels[static_cast<size_t>(gi)];
                local_labels[static_cast<size_t>(i)] = l < 0 ? 0 : l;
                if (gi == ego.center) local_center = i;
            }
            std::vector<Matrix> masks;
            for (size_t l = 0; l + 1 < bundle.gcn.layers.size(); ++l)
                masks.push_back(dropout_mask(m, cfg.gcn_hidden_dim, cfg.dropout, rng));
            double loss = 0.0;
            GcnGradients g = gcn_backward(bundle.gcn, adj, x, local_labels, {local_center},
                                          cfg.weight_decay,
                                          cfg.dropout > 0.0 ? &masks : nullptr, &loss);
            loss_sum += loss;
            if (accum.layers.empty()) {
                accum = std::move(g);
            } else {
                for (size_t l = 0; l < accum.layers.size(); ++l) {
                    for (size_t i = 0; i < accum.layers[l].w.data.size(); ++i)
                        accum.layers[l].w.data[i] += g.layers[l].w.data[i];
                    for (size_t i = 0; i < accum.layers[l].b.data.size(); ++i)
                        accum.layers[l].b.data[i] += g.layers[l].b.data[i];
                }
            }
        }
        const double inv = 1.0 / static_cast<double>(batch.size());
        std::vector<Matrix*> params;
        std::vector<const Matrix*> grads;
        for (size_t l = 0; l < bundle.gcn.layers.size(); ++l) {
            for (double& v : accum.layers[l].w.data) v *= inv;
            for (double& v : accum.layers[l].b.data) v *= inv;
            params.push_back(&bundle.gcn.layers[l].w);
            params.push_back(&bundle.gcn.layers[l].b);
            grads.push_back(&accum.layers[l].w);
            grads.push_back(&accum.layers[l].b);
        }
        double loss = loss_sum * inv;
        if (!std::isfinite(loss))
            throw NumericError("train_gcn diverged at epoch " + std::to_string(epoch));
        bundle.history.loss.push_back(loss);
        adam_step(params, grads, state, cfg);

        if (epoch % 50 == 0 && !test_indices.empty()) {
            // Full-graph inference, metrics on the held-out contracts.
            Matrix logits = gcn_forward(bundle.gcn, full_adj, full_x);
            std::vector<double> probs;
            std::vector<int> truth;
            for (int i : test_indices) {
                probs.push_back(sigmoid(logits.at(i, 0)));
                truth.push_back(ds.labels[static_cast<size_t>(i)]);
            }
            bundle.history.eval_epochs.push_back(epoch);
            bundle.history.eval_f1.push_back(metrics(confusion(probs, truth)).f1);
        }
    }
    return bundle;
}

std::vector<double> predict_mlp(const ModelBundle& bundle, const Matrix& features,
                                const std::string& feature_order_version) {
    if (bundle.model_type != "mlp") throw DataError("predict_mlp: bundle is not an MLP");
    if (feature_order_version != bundle.feature_order_version)
        throw DataError("feature_order_version mismatch: bundle has " +
                        bundle.feature_order_version + ", input has " + feature_order_version);
    Matrix logits = mlp_forward(bundle.mlp, features);
    std::vector<double> probs(static_cast<size_t>(logits.rows));
    for (int i = 0; i < logits.rows; ++i) probs[static_cast<size_t>(i)] = sigmoid(logits.at(i, 0));
    return probs;
}

std::vector<double> predict_gcn(const ModelBundle& bundle, const ContractDataset& ds) {
    if (bundle.model_type != "gcn") throw DataError("predict_gcn: bundle is not a GCN");
    if (ds.feature_order_version != bundle.feature_order_version)
        throw DataError("feature_order_version mismatch: bundle has " +
                        bundle.feature_order_version + ", dataset has " + ds.feature_order_version);
    const int n = static_cast<int>(ds.contracts.size());
    NormAdjacency adj = gcn_normalize_adjacency(ds.edges, n);
    Matrix x(n, kFeatureDim);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < kFeatureDim; ++j)
            x.at(i, j) = ds.features[static_cast<size_t>(i)][static_cast<size_t>(j)];
    Matrix logits = gcn_forward(bundle.gcn, adj, x);
    std::vector<double> probs(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) probs[static_cast<size_t>(i)] = sigmoid(logits.at(i, 0));
    return probs;
}

namespace {

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
    return {{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
    Matrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    auto data = j.at("data").get<std::vector<double>>();
    if (data.size() != m.data.size()) throw DataError("matrix data size mismatch in bundle");
    m.data = std::move(data);
    return m;
}

}  // namespace

std::string bundle_to_json(const ModelBundle& bundle, const std::string& config_hash) {
    nlohmann::ordered_json doc;
    doc["model_type"] = bundle.model_type;
    doc["feature_order_version"] = bundle.feature_order_version;
    doc["config_hash"] = config_hash;
    const TrainConfig& c = bundle.config;
    doc["train_config"] = {{"learning_rate", c.learning_rate},
                           {"weight_decay", c.weight_decay},
                           {"dropout", c.dropout},
                           {"mlp_epochs", c.mlp_epochs},
                           {"gcn_epochs", c.gcn_epochs},
                           {"mlp_hidden_dim", c.mlp_hidden_dim},
                           {"gcn_hidden_dim", c.gcn_hidden_dim},
                           {"gcn_layers", c.gcn_layers},
                           {"gcn_batch_size", c.gcn_batch_size},
                           {"gcn_ego_radius", c.gcn_ego_radius},
                           {"adam_beta1", c.adam_beta1},
                           {"adam_beta2", c.adam_beta2},
                           {"adam_eps", c.adam_eps},
                           {"rng_seed", c.rng_seed}};
    doc["norm_stats"] = nlohmann::ordered_json::array();
    for (int j = 0; j < kFeatureDim; ++j)
        doc["norm_stats"].push_back({{"mean", bundle.norm_stats.mean[static_cast<size_t>(j)]},
                                     {"std", bundle.norm_stats.std[static_cast<size_t>(j)]}});
    if (bundle.model_type == "mlp") {
        doc["params"] = {{"w1", matrix_to_json(bundle.mlp.w1)},
                         {"b1", matrix_to_json(bundle.mlp.b1)},
                         {"w2", matrix_to_json(bundle.mlp.w2)},
                         {"b2", matrix_to_json(bundle.mlp.b2)}};
    } else {
        doc["params"] = nlohmann::ordered_json::array();
        for (const auto& layer : bundle.gcn.layers)
            doc["params"].push_back({{"w", matrix_to_json(layer.w)}, {"b", matrix_to_json(layer.b)}});
    }
    doc["history"] = {{"loss", bundle.history.loss},
                      {"eval_epochs", bundle.history.eval_epochs},
                      {"eval_f1", bundle.history.eval_f1}};
    return doc.dump(2) + "\n";
}

ModelBundle bundle_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("bad model bundle: ") + e.what());
    }
    ModelBundle bundle;
    bundle.model_type = doc.at("model_type").get<std::string>();
    bundle.feature_order_version = doc.at("feature_order_version").get<std::string>();
    const auto& c = doc.at("train_config");
    bundle.config.learning_rate = c.at("learning_rate").get<double>();
    bundle.config.weight_decay = c.at("weight_decay").get<double>();
    bundle.config.dropout = c.at("dropout").get<double>();
    bundle.config.mlp_epochs = c.at("mlp_epochs").get<int>();
    bundle.config.gcn_epochs = c.at("gcn_epochs").get<int>();
    bundle.config.mlp_hidden_dim = c.at("mlp_hidden_dim").get<int>();
    bundle.config.gcn_hidden_dim = c.at("gcn_hidden_dim").get<int>();
    bundle.config.gcn_layers = c.at("gcn_layers").get<int>();
    bundle.config.gcn_batch_size = c.at("gcn_batch_size").get<int>();
    bundle.config.gcn_ego_radius = c.at("gcn_ego_radius").get<int>();
    bundle.config.adam_beta1 = c.at("adam_beta1").get<double>();
    bundle.config.adam_beta2 = c.at("adam_beta2").get<double>();
    bundle.config.adam_eps = c.at("adam_eps").get<double>();
    bundle.config.rng_seed = c.at("rng_seed").get<std::uint64_t>();
    const auto& stats = doc.at("norm_stats");
    if (stats.size() != kFeatureDim) throw DataError("bundle norm_stats must have 13 entries");
    for (int j = 0; j < kFeatureDim; ++j) {
        bundle.norm_stats.mean[static_cast<size_t>(j)] = stats[static_cast<size_t>(j)].at("mean").get<double>();
        bundle.norm_stats.std[static_cast<size_t>(j)] = stats[static_cast<size_t>(j)].at("std").get<double>();
    }
    if (bundle.model_type == "mlp") {
        const auto& p = doc.at("params");
        bundle.mlp.w1 = matrix_from_json(p.at("w1"));
        bundle.mlp.b1 = matrix_from_json(p.at("b1"));
        bundle.mlp.w2 = matrix_from_json(p.at("w2"));
        bundle.mlp.b2 = matrix_from_json(p.at("b2"));
    } else if (bundle.model_type == "gcn") {
        for (const auto& layer : doc.at("params")) {
            GcnLayer gl;
            gl.w = matrix_from_json(layer.at("w"));
            gl.b = matrix_from_json(layer.at("b"));
            bundle.gcn.layers.push_back(std::move(gl));
        }
    } else {
        throw DataError("unknown model_type: " + bundle.model_type);
    }
    bundle.history.loss = doc.at("history").at("loss").get<std::vector<double>>();
    bundle.history.eval_epochs = doc.at("history").at("eval_epochs").get<std::vector<int>>();
    bundle.history.eval_f1 = doc.at("history").at("eval_f1").get<std::vector<double>>();
    return bundle;
}

}  // namespace scamnet
