#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scamnet/contractize.hpp"
#include "scamnet/rng.hpp"
#include "scamnet/topo.hpp"

namespace scamnet {

// Row-major dense matrix, double precision throughout the training path.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * static_cast<size_t>(c), 0.0) {}

    double& at(int r, int c) { return data[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
    double at(int r, int c) const { return data[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)]; }
};

// C = A * B
Matrix matmul(const Matrix& a, const Matrix& b);
// C = A^T * B
Matrix matmul_at_b(const Matrix& a, const Matrix& b);
// C = A * B^T
Matrix matmul_a_bt(const Matrix& a, const Matrix& b);

struct MlpParams {
    Matrix w1;  // hidden x in (32 x 13)
    Matrix b1;  // 1 x hidden
    Matrix w2;  // 1 x hidden
    Matrix b2;  // 1 x 1
};

struct GcnLayer {
    Matrix w;  // in x out
    Matrix b;  // 1 x out
};

struct GcnParams {
    std::vector<GcnLayer> layers;  // 13 -> 64 x5 -> 1 (6 layers)
};

struct TrainConfig {
    double learning_rate = 1e-3;
    double weight_decay = 1e-5;
    double dropout = 0.2;
    int mlp_epochs = 5000;
    int gcn_epochs = 500;
    int mlp_hidden_dim = 32;
    int gcn_hidden_dim = 64;
    int gcn_layers = 6;
    int gcn_batch_size = 8;
    int gcn_ego_radius = 2;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t rng_seed = 0;
};

struct TrainHistory {
    std::vector<double> loss;        // one entry per epoch
    std::vector<int> eval_epochs;    // epochs where test F1 was recorded
    std::vector<double> eval_f1;
};

struct ModelBundle {
    std::string model_type;  // "mlp" | "gcn"
    MlpParams mlp;
    GcnParams gcn;
    NormStats norm_stats;
    std::string feature_order_version = kFeatureOrderVersion;
    TrainConfig config;
    TrainHistory history;
};

// Sparse symmetric-normalized adjacency for GCN propagation:
// binarized edges plus self-loops, D^{-1/2}(A+I)D^{-1/2}.
struct NormAdjacency {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> rows;

    Matrix multiply(const Matrix& x) const;  // A_hat * x
};

NormAdjacency gcn_normalize_adjacency(const std::vector<ContractEdge>& edges, int n);

// Forward passes. dropout_mask, when present, is applied (inverted dropout,
// already scaled) to hidden activations.
Matrix mlp_forward(const MlpParams& p, const Matrix& x, const Matrix* dropout_mask = nullptr);
Matrix gcn_forward(const GcnParams& p, const NormAdjacency& adj, const Matrix& x,
                   const std::vector<Matrix>* dropout_masks = nullptr);

// Mean of softplus(z) - y*z in numerically stable form.
double bce_loss(const Matrix& logits, const std::vector<int>& labels);

// L2 penalty 0.5 * wd * sum(theta^2) over all parameters.
double l2_penalty(const MlpParams& p, double wd);
double l2_penalty(const GcnParams& p, double wd);

struct MlpGradients {
    Matrix w1, b1, w2, b2;
};
struct GcnGradients {
    std::vector<GcnLayer> layers;
};

// Analytic gradients of (BCE + L2) w.r.t. all parameters. loss_out, when
// given, receives the regularized loss of this pass.
MlpGradients mlp_backward(const MlpParams& p, const Matrix& x, const std::vector<int>& labels,
                          double weight_decay, const Matrix* dropout_mask = nullptr,
                          double* loss_out = nullptr);

// loss_nodes selects the rows contributing to the BCE mean (ego-batch
// centers); labels are indexed per graph row, -1 rows must not be selected.
GcnGradients gcn_backward(const GcnParams& p, const NormAdjacency& adj, const Matrix& x,
                          const std::vector<int>& labels, const std::vector<int>& loss_nodes,
                          double weight_decay, const std::vector<Matrix>* dropout_masks = nullptr,
                          double* loss_out = nullptr);

struct AdamState {
    std::vector<Matrix> m;
    std::vector<Matrix> v;
    int step = 0;
};

// One Adam update over a flat list of parameter tensors. Gradients must
// already include the weight-decay term. Throws NumericError on non-finite
// gradients.
void adam_step(std::vector<Matrix*> params, const std::vector<const Matrix*>& grads,
               AdamState& state, const TrainConfig& cfg);

MlpParams init_mlp(const TrainConfig& cfg, Rng& rng);
GcnParams init_gcn(const TrainConfig& cfg, Rng& rng);

ModelBundle train_mlp(const Matrix& features, const std::vector<int>& labels,
                      const TrainConfig& cfg, const NormStats& norm_stats,
                      const Matrix* eval_features = nullptr,
                      const std::vector<int>* eval_labels = nullptr);

ModelBundle train_gcn(const ContractDataset& ds, const std::vector<int>& train_indices,
                      const std::vector<int>& test_indices, const TrainConfig& cfg,
                      const NormStats& norm_stats);

// Sigmoid probabilities; refuses mismatched feature_order_version.
std::vector<double> predict_mlp(const ModelBundle& bundle, const Matrix& features,
                                const std::string& feature_order_version);
std::vector<double> predict_gcn(const ModelBundle& bundle, const ContractDataset& ds);

std::string bundle_to_json(const ModelBundle& bundle, const std::string& config_hash);
ModelBundle bundle_from_json(const std::string& text);

}  // namespace scamnet
