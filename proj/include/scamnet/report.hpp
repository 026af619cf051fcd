#pragma once

#include <array>
#include <string>
#include <vector>

#include "scamnet/eval.hpp"
#include "scamnet/nn.hpp"

namespace scamnet {

// Column-wise L1 mass of the MLP's first weight layer, one value per input
// feature, labeled with the canonical feature names. Throws on GCN bundles.
std::array<double, kFeatureDim> weight_contributions(const ModelBundle& bundle);

struct ModelEvaluation {
    std::string model_type;
    ConfusionMatrix cm;
    Metrics metrics;
    double threshold = 0.5;
    TrainHistory history;
};

// Deterministic JSON report: per-model metrics (MLP before GCN), training
// curves, first-layer contributions for the MLP, config echo, seeds.
std::string emit_report(const std::vector<const ModelBundle*>& bundles,
                        const std::vector<ModelEvaluation>& evals,
                        const std::string& config_hash);

}  // namespace scamnet
