#include "scamnet/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scamnet/balance.hpp"
#include "scamnet/contractize.hpp"
#include "scamnet/eval.hpp"
#include "scamnet/ingest.hpp"
#include "scamnet/report.hpp"
#include "scamnet/topo.hpp"

namespace scamnet {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write file: " + path);
    out << content;
}

namespace {

std::string scope_name(ResampleScope s) {
    return s == ResampleScope::TrainOnly ? "train-only" : "pre-split";
}

std::string out_path(const PipelineConfig& cfg, const std::string& name) {
    return (fs::path(cfg.out_dir) / name).string();
}

void write_manifest(const PipelineConfig& cfg, const std::string& stage,
                    const std::vector<std::pair<std::string, std::string>>& inputs,
                    const std::vector<std::string>& outputs) {
    nlohmann::ordered_json doc;
    doc["stage"] = stage;
    doc["tool_version"] = kToolVersion;
    doc["config_hash"] = cfg.hash();
    doc["seed"] = cfg.seed;
    doc["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [name, content] : inputs) doc["inputs"][name] = fnv1a64_hex(content);
    doc["outputs"] = nlohmann::ordered_json::object();
    for (const auto& name : outputs) doc["outputs"][name] = fnv1a64_hex(read_file(out_path(cfg, name)));
    write_file(out_path(cfg, stage + "_manifest.json"), doc.dump(2) + "\n");
}

Matrix rows_to_matrix(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw DataError("empty sample set");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            m.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    return m;
}

Matrix feature_rows_to_matrix(const std::vector<FeatureRow>& rows, const std::vector<int>& idx) {
    Matrix m(static_cast<int>(idx.size()), kFeatureDim);
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < kFeatureDim; ++j)
            m.at(static_cast<int>(i), j) = rows[static_cast<size_t>(idx[i])][static_cast<size_t>(j)];
    return m;
}

NormStats load_norm_stats(const PipelineConfig& cfg) {
    nlohmann::json side = nlohmann::json::parse(read_file(out_path(cfg, "features_meta.json")));
    NormStats stats;
    const auto& arr = side.at("norm_stats");
    for (int j = 0; j < kFeatureDim; ++j) {
        stats.mean[static_cast<size_t>(j)] = arr[static_cast<size_t>(j)].at("mean").get<double>();
        stats.std[static_cast<size_t>(j)] = arr[static_cast<size_t>(j)].at("std").get<double>();
    }
    return stats;
}

struct MlpTrainData {
    Matrix train_x;
    std::vector<int> train_y;
    Matrix test_x;
    std::vector<int> test_y;
    ResampleReport resample_report;
};

MlpTrainData prepare_mlp_data(const PipelineConfig& cfg, const ContractDataset& ds) {
    MlpTrainData d;
    if (cfg.resample_scope == ResampleScope::TrainOnly) {
        SplitResult split = stratified_split(ds.labels, cfg.test_fraction, cfg.seed);
        LabeledSamples train;
        for (int i : split.train) {
            const auto& row = ds.features[static_cast<size_t>(i)];
            train.features.emplace_back(row.begin(), row.end());
            train.labels.push_back(ds.labels[static_cast<size_t>(i)]);
            train.provenance.push_back(Provenance::Original);
        }
        LabeledSamples resampled = smote_enn(train, cfg.smote_k, cfg.enn_k, cfg.target_ratio,
                                             cfg.seed, &d.resample_report);
        d.train_x = rows_to_matrix(resampled.features);
        d.train_y = resampled.labels;
        d.test_x = feature_rows_to_matrix(ds.features, split.test);
        for (int i : split.test) d.test_y.push_back(ds.labels[static_cast<size_t>(i)]);
    } else {
        LabeledSamples all;
        for (size_t i = 0; i < ds.contracts.size(); ++i) {
            if (ds.labels[i] < 0) continue;
            const auto& row = ds.features[i];
            all.features.emplace_back(row.begin(), row.end());
            all.labels.push_back(ds.labels[i]);
            all.provenance.push_back(Provenance::Original);
        }
        LabeledSamples resampled = smote_enn(all, cfg.smote_k, cfg.enn_k, cfg.target_ratio,
                                             cfg.seed, &d.resample_report);
        SplitResult split = stratified_split(resampled.labels, cfg.test_fraction, cfg.seed);
        auto take = [&](const std::vector<int>& idx, Matrix& x, std::vector<int>& y) {
            std::vector<std::vector<double>> rows;
            for (int i : idx) {
                rows.push_back(resampled.features[static_cast<size_t>(i)]);
                y.push_back(resampled.labels[static_cast<size_t>(i)]);
            }
            x = rows_to_matrix(rows);
        };
        take(split.train, d.train_x, d.train_y);
        take(split.test, d.test_x, d.test_y);
    }
    return d;
}

nlohmann::ordered_json eval_to_json(const PipelineConfig& cfg, const std::string& model_type,
                                    const ConfusionMatrix& cm) {
    Metrics m = metrics(cm);
    nlohmann::ordered_json doc;
    doc["model_type"] = model_type;
    doc["config_hash"] = cfg.hash();
    doc["seed"] = cfg.seed;
    doc["threshold"] = cfg.threshold;
    doc["confusion"] = {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
    doc["metrics"] = {{"accuracy", m.accuracy},
                      {"precision", m.precision},
                      {"recall", m.recall},
                      {"f1", m.f1}};
    return doc;
}

ConfusionMatrix eval_from_json(const nlohmann::json& doc) {
    ConfusionMatrix cm;
    cm.tp = doc.at("confusion").at("tp").get<long long>();
    cm.fp = doc.at("confusion").at("fp").get<long long>();
    cm.fn = doc.at("confusion").at("fn").get<long long>();
    cm.tn = doc.at("confusion").at("tn").get<long long>();
    return cm;
}

}  // namespace

std::string PipelineConfig::to_json() const {
    nlohmann::ordered_json doc;
    doc["paths"] = {{"transactions", transactions_path},
                    {"kinds", kinds_path},
                    {"labels", labels_path},
                    {"out_dir", out_dir}};
    doc["prune_min_degree"] = prune_min_degree;
    doc["threshold"] = threshold;
    doc["test_fraction"] = test_fraction;
    doc["seed"] = seed;
    doc["resample"] = {{"smote_k", smote_k},
                       {"enn_k", enn_k},
                       {"target_ratio", target_ratio},
                       {"scope", scope_name(resample_scope)}};
    doc["train"] = {{"learning_rate", train.learning_rate},
                    {"weight_decay", train.weight_decay},
                    {"dropout", train.dropout},
                    {"mlp_epochs", train.mlp_epochs},
                    {"gcn_epochs", train.gcn_epochs},
                    {"mlp_hidden_dim", train.mlp_hidden_dim},
                    {"gcn_hidden_dim", train.gcn_hidden_dim},
                    {"gcn_layers", train.gcn_layers},
                    {"gcn_batch_size", train.gcn_batch_size},
                    {"gcn_ego_radius", train.gcn_ego_radius},
                    {"adam_beta1", train.adam_beta1},
                    {"adam_beta2", train.adam_beta2},
                    {"adam_eps", train.adam_eps}};
    doc["synth"] = {{"n_eoa", synth.n_eoa},
                    {"n_contract", synth.n_contract},
                    {"n_scam", synth.n_scam},
                    {"background_tx_per_eoa", synth.background_tx_per_eoa},
                    {"scam_fan_in", synth.scam_fan_in},
                    {"value_log10_mean", synth.value_log10_mean},
                    {"value_log10_std", synth.value_log10_std}};
    return doc.dump(2) + "\n";
}

PipelineConfig PipelineConfig::from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    PipelineConfig cfg;  // Table-1 defaults; the document overrides
    if (doc.contains("paths")) {
        const auto& p = doc["paths"];
        if (p.contains("transactions")) cfg.transactions_path = p["transactions"].get<std::string>();
        if (p.contains("kinds")) cfg.kinds_path = p["kinds"].get<std::string>();
        if (p.contains("labels")) cfg.labels_path = p["labels"].get<std::string>();
        if (p.contains("out_dir")) cfg.out_dir = p["out_dir"].get<std::string>();
    }
    if (doc.contains("prune_min_degree")) cfg.prune_min_degree = doc["prune_min_degree"].get<int>();
    if (doc.contains("threshold")) cfg.threshold = doc["threshold"].get<double>();
    if (doc.contains("test_fraction")) cfg.test_fraction = doc["test_fraction"].get<double>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("resample")) {
        const auto& r = doc["resample"];
        if (r.contains("smote_k")) cfg.smote_k = r["smote_k"].get<int>();
        if (r.contains("enn_k")) cfg.enn_k = r["enn_k"].get<int>();
        if (r.contains("target_ratio")) cfg.target_ratio = r["target_ratio"].get<double>();
        if (r.contains("scope")) {
            std::string s = r["scope"].get<std::string>();
            if (s == "train-only") cfg.resample_scope = ResampleScope::TrainOnly;
            else if (s == "pre-split") cfg.resample_scope = ResampleScope::PreSplit;
            else throw UsageError("resample.scope must be train-only or pre-split, got '" + s + "'");
        }
    }
    if (doc.contains("train")) {
        const auto& t = doc["train"];
        if (t.contains("learning_rate")) cfg.train.learning_rate = t["learning_rate"].get<double>();
        if (t.contains("weight_decay")) cfg.train.weight_decay = t["weight_decay"].get<double>();
        if (t.contains("dropout")) cfg.train.dropout = t["dropout"].get<double>();
        if (t.contains("mlp_epochs")) cfg.train.mlp_epochs = t["mlp_epochs"].get<int>();
        if (t.contains("gcn_epochs")) cfg.train.gcn_epochs = t["gcn_epochs"].get<int>();
        if (t.contains("mlp_hidden_dim")) cfg.train.mlp_hidden_dim = t["mlp_hidden_dim"].get<int>();
        if (t.contains("gcn_hidden_dim")) cfg.train.gcn_hidden_dim = t["gcn_hidden_dim"].get<int>();
        if (t.contains("gcn_layers")) cfg.train.gcn_layers = t["gcn_layers"].get<int>();
        if (t.contains("gcn_batch_size")) cfg.train.gcn_batch_size = t["gcn_batch_size"].get<int>();
        if (t.contains("gcn_ego_radius")) cfg.train.gcn_ego_radius = t["gcn_ego_radius"].get<int>();
        if (t.contains("adam_beta1")) cfg.train.adam_beta1 = t["adam_beta1"].get<double>();
        if (t.contains("adam_beta2")) cfg.train.adam_beta2 = t["adam_beta2"].get<double>();
        if (t.contains("adam_eps")) cfg.train.adam_eps = t["adam_eps"].get<double>();
    }
    if (doc.contains("synth")) {
        const auto& s = doc["synth"];
        if (s.contains("n_eoa")) cfg.synth.n_eoa = s["n_eoa"].get<int>();
        if (s.contains("n_contract")) cfg.synth.n_contract = s["n_contract"].get<int>();
        if (s.contains("n_scam")) cfg.synth.n_scam = s["n_scam"].get<int>();
        if (s.contains("background_tx_per_eoa"))
            cfg.synth.background_tx_per_eoa = s["background_tx_per_eoa"].get<double>();
        if (s.contains("scam_fan_in")) cfg.synth.scam_fan_in = s["scam_fan_in"].get<int>();
        if (s.contains("value_log10_mean")) cfg.synth.value_log10_mean = s["value_log10_mean"].get<double>();
        if (s.contains("value_log10_std")) cfg.synth.value_log10_std = s["value_log10_std"].get<double>();
    }
    cfg.train.rng_seed = cfg.seed;
    cfg.synth.seed = cfg.seed;
    return cfg;
}

std::string PipelineConfig::hash() const { return fnv1a64_hex(to_json()); }

std::vector<std::string> validate_config(const PipelineConfig& cfg) {
    std::vector<std::string> v;
    if (cfg.prune_min_degree < 0) v.push_back("prune_min_degree: must be >= 0");
    if (cfg.threshold <= 0.0 || cfg.threshold >= 1.0) v.push_back("threshold: must be in (0,1)");
    if (cfg.test_fraction <= 0.0 || cfg.test_fraction >= 1.0)
        v.push_back("test_fraction: must be in (0,1)");
    if (cfg.smote_k < 1) v.push_back("resample.smote_k: must be >= 1");
    if (cfg.enn_k < 1) v.push_back("resample.enn_k: must be >= 1");
    if (cfg.target_ratio <= 0.0) v.push_back("resample.target_ratio: must be > 0");
    if (cfg.train.learning_rate <= 0.0) v.push_back("train.learning_rate: must be > 0");
    if (cfg.train.weight_decay < 0.0) v.push_back("train.weight_decay: must be >= 0");
    if (cfg.train.dropout < 0.0 || cfg.train.dropout >= 1.0)
        v.push_back("train.dropout: must satisfy dropout in [0,1)");
    if (cfg.train.mlp_epochs < 0) v.push_back("train.mlp_epochs: must be >= 0");
    if (cfg.train.gcn_epochs < 0) v.push_back("train.gcn_epochs: must be >= 0");
    if (cfg.train.mlp_hidden_dim < 1) v.push_back("train.mlp_hidden_dim: must be >= 1");
    if (cfg.train.gcn_hidden_dim < 1) v.push_back("train.gcn_hidden_dim: must be >= 1");
    if (cfg.train.gcn_layers < 1) v.push_back("train.gcn_layers: must be >= 1");
    if (cfg.train.gcn_batch_size < 1) v.push_back("train.gcn_batch_size: must be >= 1");
    if (cfg.train.gcn_ego_radius < 0) v.push_back("train.gcn_ego_radius: must be >= 0");
    if (cfg.train.adam_beta1 <= 0.0 || cfg.train.adam_beta1 >= 1.0)
        v.push_back("train.adam_beta1: must be in (0,1)");
    if (cfg.train.adam_beta2 <= 0.0 || cfg.train.adam_beta2 >= 1.0)
        v.push_back("train.adam_beta2: must be in (0,1)");
    if (cfg.train.adam_eps <= 0.0) v.push_back("train.adam_eps: must be > 0");
    if (cfg.synth.n_eoa < 1) v.push_back("synth.n_eoa: must be >= 1");
    if (cfg.synth.n_contract < 1) v.push_back("synth.n_contract: must be >= 1");
    if (cfg.synth.n_scam < 1) v.push_back("synth.n_scam: must be >= 1");
    if (cfg.synth.n_scam >= cfg.synth.n_contract)
        v.push_back("synth.n_scam: must be < synth.n_contract");
    return v;
}

void run_synth(const PipelineConfig& cfg) {
    SynthOutput out = generate(cfg.synth);
    write_file(cfg.transactions_path, out.transactions_csv);
    write_file(cfg.kinds_path, out.kinds_csv);
    write_file(cfg.labels_path, out.labels_csv);
    nlohmann::ordered_json doc;
    doc["stage"] = "synth";
    doc["tool_version"] = kToolVersion;
    doc["config_hash"] = cfg.hash();
    doc["seed"] = cfg.seed;
    doc["inputs"] = nlohmann::ordered_json::object();
    doc["outputs"] = {{"transactions.csv", fnv1a64_hex(out.transactions_csv)},
                      {"kinds.csv", fnv1a64_hex(out.kinds_csv)},
                      {"labels.csv", fnv1a64_hex(out.labels_csv)}};
    write_file(out_path(cfg, "synth_manifest.json"), doc.dump(2) + "\n");
}

void run_ingest(const PipelineConfig& cfg) {
    std::string tx_text = read_file(cfg.transactions_path);
    std::string kinds_text = read_file(cfg.kinds_path);
    std::istringstream tx_in(tx_text), kinds_in(kinds_text);
    std::vector<TxRecord> records = parse_transactions(tx_in);
    KindMap kinds = load_kinds(kinds_in);
    TxGraph g = build_graph(records, kinds);
    TxGraph pruned = prune_low_degree(g, cfg.prune_min_degree);
    write_file(out_path(cfg, "graph.json"), graph_to_json(pruned));
    write_manifest(cfg, "ingest",
                   {{"transactions.csv", tx_text}, {"kinds.csv", kinds_text}}, {"graph.json"});
}

void run_featurize(const PipelineConfig& cfg) {
    std::string graph_text = read_file(out_path(cfg, "graph.json"));
    TxGraph g = graph_from_json(graph_text);
    FeatureMatrix raw = assemble_features(g);
    FeatureMatrix normalized = fit_normalize(raw);
    write_file(out_path(cfg, "features.csv"), features_to_csv(normalized));
    write_file(out_path(cfg, "features_meta.json"), feature_sidecar_json(normalized, cfg.hash()));
    write_manifest(cfg, "featurize", {{"graph.json", graph_text}},
                   {"features.csv", "features_meta.json"});
}

void run_contractize(const PipelineConfig& cfg) {
    std::string graph_text = read_file(out_path(cfg, "graph.json"));
    std::string feats_text = read_file(out_path(cfg, "features.csv"));
    std::string meta_text = read_file(out_path(cfg, "features_meta.json"));
    std::string labels_text = read_file(cfg.labels_path);
    TxGraph g = graph_from_json(graph_text);
    FeatureMatrix m = features_from_csv(feats_text, meta_text);
    std::istringstream labels_in(labels_text);
    LabelMap labels = load_labels(labels_in);
    ContractDataset ds = aggregate_contract_features(g, m, labels);
    write_file(out_path(cfg, "contract_dataset.json"), contract_dataset_to_json(ds, cfg.hash()));
    write_manifest(cfg, "contractize",
                   {{"graph.json", graph_text},
                    {"features.csv", feats_text},
                    {"labels.csv", labels_text}},
                   {"contract_dataset.json"});
}

void run_resample(const PipelineConfig& cfg) {
    std::string ds_text = read_file(out_path(cfg, "contract_dataset.json"));
    ContractDataset ds = contract_dataset_from_json(ds_text);
    LabeledSamples samples;
    for (size_t i = 0; i < ds.contracts.size(); ++i) {
        if (ds.labels[i] < 0) continue;
        samples.features.emplace_back(ds.features[i].begin(), ds.features[i].end());
        samples.labels.push_back(ds.labels[i]);
        samples.provenance.push_back(Provenance::Original);
    }
    ResampleReport report;
    LabeledSamples resampled =
        smote_enn(samples, cfg.smote_k, cfg.enn_k, cfg.target_ratio, cfg.seed, &report);

    nlohmann::ordered_json doc;
    doc["feature_order_version"] = ds.feature_order_version;
    doc["config_hash"] = cfg.hash();
    doc["counts"] = {{"pos_before", report.pos_before},
                     {"neg_before", report.neg_before},
                     {"pos_after_smote", report.pos_after_smote},
                     {"neg_after_smote", report.neg_after_smote},
                     {"pos_after", report.pos_after},
                     {"neg_after", report.neg_after}};
    doc["features"] = resampled.features;
    doc["labels"] = resampled.labels;
    doc["provenance"] = nlohmann::ordered_json::array();
    for (Provenance p : resampled.provenance)
        doc["provenance"].push_back(p == Provenance::Synthetic ? "synthetic" : "original");
    write_file(out_path(cfg, "resampled_dataset.json"), doc.dump(2) + "\n");
    write_manifest(cfg, "resample", {{"contract_dataset.json", ds_text}},
                   {"resampled_dataset.json"});
}

void run_train_mlp(const PipelineConfig& cfg) {
    std::string ds_text = read_file(out_path(cfg, "contract_dataset.json"));
    ContractDataset ds = contract_dataset_from_json(ds_text);
    NormStats stats = load_norm_stats(cfg);
    MlpTrainData data = prepare_mlp_data(cfg, ds);
    ModelBundle bundle =
        train_mlp(data.train_x, data.train_y, cfg.train, stats, &data.test_x, &data.test_y);
    std::vector<double> probs = predict_mlp(bundle, data.test_x, ds.feature_order_version);
    ConfusionMatrix cm = confusion(probs, data.test_y, cfg.threshold);
    write_file(out_path(cfg, "mlp_bundle.json"), bundle_to_json(bundle, cfg.hash()));
    write_file(out_path(cfg, "mlp_eval.json"), eval_to_json(cfg, "mlp", cm).dump(2) + "\n");
    write_manifest(cfg, "train_mlp", {{"contract_dataset.json", ds_text}},
                   {"mlp_bundle.json", "mlp_eval.json"});
}

void run_train_gcn(const PipelineConfig& cfg) {
    std::string ds_text = read_file(out_path(cfg, "contract_dataset.json"));
    ContractDataset ds = contract_dataset_from_json(ds_text);
    NormStats stats = load_norm_stats(cfg);
    SplitResult split = stratified_split(ds.labels, cfg.test_fraction, cfg.seed);
    ModelBundle bundle = train_gcn(ds, split.train, split.test, cfg.train, stats);
    std::vector<double> all_probs = predict_gcn(bundle, ds);
    std::vector<double> probs;
    std::vector<int> truth;
    for (int i : split.test) {
        probs.push_back(all_probs[static_cast<size_t>(i)]);
        truth.push_back(ds.labels[static_cast<size_t>(i)]);
    }
    ConfusionMatrix cm = confusion(probs, truth, cfg.threshold);
    write_file(out_path(cfg, "gcn_bundle.json"), bundle_to_json(bundle, cfg.hash()));
    write_file(out_path(cfg, "gcn_eval.json"), eval_to_json(cfg, "gcn", cm).dump(2) + "\n");
    write_manifest(cfg, "train_gcn", {{"contract_dataset.json", ds_text}},
                   {"gcn_bundle.json", "gcn_eval.json"});
}

void run_evaluate(const PipelineConfig& cfg) {
    std::vector<ModelBundle> bundles;
    std::vector<ModelEvaluation> evals;
    std::vector<std::pair<std::string, std::string>> inputs;
    for (const char* model : {"mlp", "gcn"}) {
        std::string bundle_path = out_path(cfg, std::string(model) + "_bundle.json");
        std::string eval_path = out_path(cfg, std::string(model) + "_eval.json");
        if (!fs::exists(bundle_path)) continue;
        std::string bundle_text = read_file(bundle_path);
        std::string eval_text = read_file(eval_path);
        ModelBundle b = bundle_from_json(bundle_text);
        nlohmann::json e = nlohmann::json::parse(eval_text);
        ModelEvaluation ev;
        ev.model_type = b.model_type;
        ev.cm = eval_from_json(e);
        ev.metrics = metrics(ev.cm);
        ev.threshold = e.at("threshold").get<double>();
        ev.history = b.history;
        bundles.push_back(std::move(b));
        evals.push_back(std::move(ev));
        inputs.emplace_back(std::string(model) + "_bundle.json", bundle_text);
        inputs.emplace_back(std::string(model) + "_eval.json", eval_text);
    }
    if (bundles.empty()) throw UsageError("evaluate: no trained bundles in " + cfg.out_dir);
    std::vector<const ModelBundle*> ptrs;
    for (const auto& b : bundles) ptrs.push_back(&b);
    write_file(out_path(cfg, "report.json"), emit_report(ptrs, evals, cfg.hash()));
    write_manifest(cfg, "evaluate", inputs, {"report.json"});
}

void run_predict(const PipelineConfig& cfg, const std::string& model_type) {
    std::string ds_text = read_file(out_path(cfg, "contract_dataset.json"));
    std::string bundle_text = read_file(out_path(cfg, model_type + "_bundle.json"));
    ContractDataset ds = contract_dataset_from_json(ds_text);
    ModelBundle bundle = bundle_from_json(bundle_text);
    std::vector<double> probs;
    if (model_type == "mlp") {
        Matrix x(static_cast<int>(ds.contracts.size()), kFeatureDim);
        for (size_t i = 0; i < ds.contracts.size(); ++i)
            for (int j = 0; j < kFeatureDim; ++j)
                x.at(static_cast<int>(i), j) = ds.features[i][static_cast<size_t>(j)];
        probs = predict_mlp(bundle, x, ds.feature_order_version);
    } else if (model_type == "gcn") {
        probs = predict_gcn(bundle, ds);
    } else {
        throw UsageError("predict: model must be mlp or gcn, got '" + model_type + "'");
    }
    std::ostringstream csv;
    csv << "address,probability\n";
    char buf[48];
    for (size_t i = 0; i < ds.contracts.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9f", probs[i]);
        csv << ds.contracts[i] << "," << buf << "\n";
    }
    write_file(out_path(cfg, model_type + "_predictions.csv"), csv.str());
    write_manifest(cfg, "predict_" + model_type,
                   {{"contract_dataset.json", ds_text},
                    {model_type + "_bundle.json", bundle_text}},
                   {model_type + "_predictions.csv"});
}

void run_pipeline(const PipelineConfig& cfg) {
    run_ingest(cfg);
    run_featurize(cfg);
    run_contractize(cfg);
    if (cfg.resample_scope == ResampleScope::PreSplit) run_resample(cfg);
    run_train_mlp(cfg);
    run_train_gcn(cfg);
    run_evaluate(cfg);
}

}  // namespace scamnet
