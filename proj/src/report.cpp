#include "scamnet/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace scamnet {

std::array<double, kFeatureDim> weight_contributions(const ModelBundle& bundle) {
    if (bundle.model_type != "mlp")
        throw DataError("weight_contributions: only supported for MLP bundles");
    std::array<double, kFeatureDim> out{};
    const Matrix& w1 = bundle.mlp.w1;  // hidden x in
    if (w1.cols != kFeatureDim) throw DataError("unexpected first-layer shape");
    for (int h = 0; h < w1.rows; ++h)
        for (int j = 0; j < kFeatureDim; ++j)
            out[static_cast<size_t>(j)] += std::abs(w1.at(h, j));
    return out;
}

std::string emit_report(const std::vector<const ModelBundle*>& bundles,
                        const std::vector<ModelEvaluation>& evals,
                        const std::string& config_hash) {
    if (bundles.empty() || bundles.size() != evals.size())
        throw DataError("emit_report: need one evaluation per bundle");
    // MLP rows first, then GCN.
    std::vector<size_t> order(bundles.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return (bundles[a]->model_type == "mlp") > (bundles[b]->model_type == "mlp");
    });

    nlohmann::ordered_json doc;
    doc["report_schema_version"] = 1;
    doc["tool_version"] = kToolVersion;
    doc["config_hash"] = config_hash;
    doc["feature_order_version"] = kFeatureOrderVersion;
    doc["models"] = nlohmann::ordered_json::array();
    for (size_t i : order) {
        const ModelBundle& b = *bundles[i];
        const ModelEvaluation& e = evals[i];
        nlohmann::ordered_json entry;
        entry["model_type"] = b.model_type;
        entry["seed"] = b.config.rng_seed;
        entry["threshold"] = e.threshold;
        entry["confusion"] = {{"tp", e.cm.tp}, {"fp", e.cm.fp}, {"fn", e.cm.fn}, {"tn", e.cm.tn}};
        entry["metrics"] = {{"accuracy", e.metrics.accuracy},
                            {"precision", e.metrics.precision},
                            {"recall", e.metrics.recall},
                            {"f1", e.metrics.f1}};
        entry["training_curve"] = {{"loss", e.history.loss},
                                   {"eval_epochs", e.history.eval_epochs},
                                   {"eval_f1", e.history.eval_f1}};
        entry["train_config"] = {{"learning_rate", b.config.learning_rate},
                                 {"weight_decay", b.config.weight_decay},
                                 {"dropout", b.config.dropout},
                                 {"epochs", b.model_type == "mlp" ? b.config.mlp_epochs
                                                                  : b.config.gcn_epochs},
                                 {"hidden_dim", b.model_type == "mlp" ? b.config.mlp_hidden_dim
                                                                      : b.config.gcn_hidden_dim}};
        if (b.model_type == "mlp") {
            auto contrib = weight_contributions(b);
            nlohmann::ordered_json cj = nlohmann::ordered_json::array();
            for (int j = 0; j < kFeatureDim; ++j)
                cj.push_back({{"feature", kFeatureNames[static_cast<size_t>(j)]},
                              {"l1_contribution", contrib[static_cast<size_t>(j)]}});
            entry["first_layer_contributions"] = cj;
        }
        doc["models"].push_back(std::move(entry));
    }
    return doc.dump(2) + "\n";
}

}  // namespace scamnet
