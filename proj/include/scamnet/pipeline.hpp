#pragma once

#include <string>
#include <vector>

#include "scamnet/nn.hpp"
#include "scamnet/synth.hpp"

namespace scamnet {

enum class ResampleScope { TrainOnly, PreSplit };

struct PipelineConfig {
    std::string transactions_path = "transactions.csv";
    std::string kinds_path = "kinds.csv";
    std::string labels_path = "labels.csv";
    std::string out_dir = "out";

    int prune_min_degree = 2;
    double threshold = 0.5;
    double test_fraction = 0.2;
    std::uint64_t seed = 42;

    int smote_k = 5;
    int enn_k = 3;
    double target_ratio = 1.0;
    ResampleScope resample_scope = ResampleScope::TrainOnly;

    TrainConfig train;  // Table-1 defaults

    SynthConfig synth;

    std::string to_json() const;
    static PipelineConfig from_json(const std::string& text);

    // fnv hash of the canonical JSON form; stamped into every artifact.
    std::string hash() const;
};

// Empty iff the config satisfies all invariants; each violation names the
// field and the rule it breaks.
std::vector<std::string> validate_config(const PipelineConfig& cfg);

// Stage entry points. Each reads its inputs from cfg paths / out_dir,
// writes its artifact plus a manifest, and throws on failure.
void run_synth(const PipelineConfig& cfg);
void run_ingest(const PipelineConfig& cfg);
void run_featurize(const PipelineConfig& cfg);
void run_contractize(const PipelineConfig& cfg);
void run_resample(const PipelineConfig& cfg);
void run_train_mlp(const PipelineConfig& cfg);
void run_train_gcn(const PipelineConfig& cfg);
void run_evaluate(const PipelineConfig& cfg);
void run_predict(const PipelineConfig& cfg, const std::string& model_type);
void run_pipeline(const PipelineConfig& cfg);

std::string read_file(const std::string& path);  // DataError when missing
void write_file(const std::string& path, const std::string& content);

}  // namespace scamnet
