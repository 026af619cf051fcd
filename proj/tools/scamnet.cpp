#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "scamnet/pipeline.hpp"

using namespace scamnet;

namespace {

struct CliOverrides {
    std::string config_path;
    std::string out_dir;
    std::string transactions, kinds, labels;
    std::string resample_scope;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double threshold = 0.0;
    bool threshold_set = false;
    int mlp_epochs = -1, gcn_epochs = -1;
};

void add_common_flags(CLI::App* cmd, CliOverrides& ov) {
    cmd->add_option("--config", ov.config_path, "Pipeline config JSON");
    cmd->add_option("--out", ov.out_dir, "Output directory for stage artifacts");
    cmd->add_option("--transactions", ov.transactions, "transactions.csv path");
    cmd->add_option("--kinds", ov.kinds, "kinds.csv path");
    cmd->add_option("--labels", ov.labels, "labels.csv path");
    cmd->add_option("--seed", ov.seed, "Master RNG seed")->each([&](const std::string&) {
        ov.seed_set = true;
    });
    cmd->add_option("--threshold", ov.threshold, "Classification threshold")
        ->each([&](const std::string&) { ov.threshold_set = true; });
    cmd->add_option("--resample-scope", ov.resample_scope,
                    "Resampling scope: train-only | pre-split");
    cmd->add_option("--mlp-epochs", ov.mlp_epochs, "Override MLP epochs");
    cmd->add_option("--gcn-epochs", ov.gcn_epochs, "Override GCN epochs");
}

PipelineConfig make_config(const CliOverrides& ov) {
    PipelineConfig cfg;
    if (!ov.config_path.empty()) cfg = PipelineConfig::from_json(read_file(ov.config_path));
    if (!ov.out_dir.empty()) cfg.out_dir = ov.out_dir;
    if (!ov.transactions.empty()) cfg.transactions_path = ov.transactions;
    if (!ov.kinds.empty()) cfg.kinds_path = ov.kinds;
    if (!ov.labels.empty()) cfg.labels_path = ov.labels;
    if (ov.seed_set) {
        cfg.seed = ov.seed;
        cfg.train.rng_seed = ov.seed;
        cfg.synth.seed = ov.seed;
    }
    if (ov.threshold_set) cfg.threshold = ov.threshold;
    if (!ov.resample_scope.empty()) {
        if (ov.resample_scope == "train-only") cfg.resample_scope = ResampleScope::TrainOnly;
        else if (ov.resample_scope == "pre-split") cfg.resample_scope = ResampleScope::PreSplit;
        else throw UsageError("--resample-scope must be train-only or pre-split");
    }
    if (ov.mlp_epochs >= 0) cfg.train.mlp_epochs = ov.mlp_epochs;
    if (ov.gcn_epochs >= 0) cfg.train.gcn_epochs = ov.gcn_epochs;

    auto violations = validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid config:";
        for (const auto& v : violations) msg += "\n  " + v;
        throw UsageError(msg);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ethereum transaction-graph scam-detection pipeline"};
    app.require_subcommand(1);

    CliOverrides ov;
    std::string train_model, predict_model;

    CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic transaction world");
    CLI::App* ingest = app.add_subcommand("ingest", "Parse files, build and prune the graph");
    CLI::App* featurize = app.add_subcommand("featurize", "Compute node topology features");
    CLI::App* contractize =
        app.add_subcommand("contractize", "Aggregate EOA features onto contracts");
    CLI::App* resample = app.add_subcommand("resample", "SMOTE-ENN rebalance the labeled set");
    CLI::App* train = app.add_subcommand("train", "Train a model (mlp | gcn)");
    train->add_option("model", train_model, "mlp or gcn")->required();
    CLI::App* evaluate = app.add_subcommand("evaluate", "Emit report.json from trained bundles");
    CLI::App* predict = app.add_subcommand("predict", "Score all contracts with a bundle");
    predict->add_option("model", predict_model, "mlp or gcn")->required();
    CLI::App* pipeline = app.add_subcommand("pipeline", "Run every stage end-to-end");
    CLI::App* validate = app.add_subcommand("validate-config", "Check a config for violations");

    for (CLI::App* cmd :
         {synth, ingest, featurize, contractize, resample, train, evaluate, predict, pipeline, validate})
        add_common_flags(cmd, ov);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (validate->parsed()) {
            PipelineConfig cfg;
            if (!ov.config_path.empty()) cfg = PipelineConfig::from_json(read_file(ov.config_path));
            auto violations = validate_config(cfg);
            for (const auto& v : violations) std::cout << v << "\n";
            if (!violations.empty()) return 1;
            std::cout << "config ok (hash " << cfg.hash() << ")\n";
            return 0;
        }
        PipelineConfig cfg = make_config(ov);
        if (synth->parsed()) run_synth(cfg);
        else if (ingest->parsed()) run_ingest(cfg);
        else if (featurize->parsed()) run_featurize(cfg);
        else if (contractize->parsed()) run_contractize(cfg);
        else if (resample->parsed()) run_resample(cfg);
        else if (train->parsed()) {
            if (train_model == "mlp") run_train_mlp(cfg);
            else if (train_model == "gcn") run_train_gcn(cfg);
            else throw UsageError("train model must be mlp or gcn, got '" + train_model + "'");
        } else if (evaluate->parsed()) run_evaluate(cfg);
        else if (predict->parsed()) run_predict(cfg, predict_model);
        else if (pipeline->parsed()) run_pipeline(cfg);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
