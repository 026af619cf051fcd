#include <doctest.h>

#include <sstream>

#include "scamnet/ingest.hpp"
#include "scamnet/synth.hpp"
#include "scamnet/topo.hpp"

using namespace scamnet;

namespace {

struct World {
    std::vector<TxRecord> records;
    KindMap kinds;
    LabelMap labels;
    TxGraph graph;
};

World ingest_world(const SynthOutput& out) {
    World w;
    std::istringstream tx(out.transactions_csv), kinds(out.kinds_csv), labels(out.labels_csv);
    w.records = parse_transactions(tx);
    w.kinds = load_kinds(kinds);
    w.labels = load_labels(labels);
    w.graph = build_graph(w.records, w.kinds);
    return w;
}

SynthConfig small_config(std::uint64_t seed) {
    SynthConfig cfg;
    cfg.n_eoa = 400;
    cfg.n_contract = 60;
    cfg.n_scam = 5;
    cfg.scam_fan_in = 20;
    cfg.seed = seed;
    return cfg;
}

}  // namespace

TEST_CASE("generate is deterministic in the seed") {
    auto cfg = small_config(11);
    auto a = generate(cfg);
    auto b = generate(cfg);
    CHECK(a.transactions_csv == b.transactions_csv);
    CHECK(a.kinds_csv == b.kinds_csv);
    CHECK(a.labels_csv == b.labels_csv);
    cfg.seed = 12;
    auto c = generate(cfg);
    CHECK(a.transactions_csv != c.transactions_csv);
    // Kind and label rosters do not depend on the seed.
    CHECK(a.kinds_csv == c.kinds_csv);
    CHECK(a.labels_csv == c.labels_csv);
}

TEST_CASE("config validation") {
    SynthConfig cfg;
    validate_synth_config(cfg);  // defaults are valid
    SynthConfig bad = cfg;
    bad.n_scam = bad.n_contract;
    CHECK_THROWS_AS(validate_synth_config(bad), UsageError);
    bad = cfg;
    bad.n_eoa = 0;
    CHECK_THROWS_AS(validate_synth_config(bad), UsageError);
    bad = cfg;
    bad.scam_fan_in = 1;
    CHECK_THROWS_AS(validate_synth_config(bad), UsageError);
    bad = cfg;
    bad.background_tx_per_eoa = 1.5;
    CHECK_THROWS_AS(validate_synth_config(bad), UsageError);
    CHECK_THROWS_AS(generate(bad), UsageError);
}

TEST_CASE("output parses cleanly with the expected rosters") {
    auto cfg = small_config(21);
    auto w = ingest_world(generate(cfg));
    CHECK(w.kinds.size() == static_cast<size_t>(cfg.n_contract));
    int pos = 0, neg = 0;
    for (const auto& [addr, label] : w.labels) {
        (label == 1 ? pos : neg)++;
        CHECK(w.kinds.count(addr) == 1);
    }
    CHECK(pos == cfg.n_scam);
    CHECK(neg == cfg.n_contract - cfg.n_scam);
    // Every labeled contract is typed contract in the graph.
    for (const auto& [addr, label] : w.labels) {
        int v = w.graph.index_of(addr);
        if (v >= 0) CHECK(w.graph.kind(v) == NodeKind::Contract);
    }
    // Every EOA has at least two transactions by construction.
    for (int v = 0; v < w.graph.node_count(); ++v)
        if (w.graph.kind(v) == NodeKind::Eoa) CHECK(w.graph.total_degree(v) >= 2);
}

TEST_CASE("scam contracts carry the fan-in motif") {
    auto cfg = small_config(31);
    auto w = ingest_world(generate(cfg));
    for (const auto& [addr, label] : w.labels) {
        if (label != 1) continue;
        int v = w.graph.index_of(addr);
        REQUIRE(v >= 0);
        CHECK(w.graph.in_degree(v) >= cfg.scam_fan_in);
        CHECK(w.graph.out_degree(v) >= 1);
        CHECK(w.graph.out_degree(v) <= 2);
    }
}

TEST_CASE("scam motif survives the degree-2 prune") {
    for (std::uint64_t seed : {41, 42, 43}) {
        auto cfg = small_config(seed);
        auto w = ingest_world(generate(cfg));
        auto pruned = prune_low_degree(w.graph, 2);
        int survived = 0;
        for (const auto& [addr, label] : w.labels)
            if (label == 1 && pruned.contains(addr)) ++survived;
        CHECK(survived * 10 >= cfg.n_scam * 9);
        // The surviving core is non-trivial.
        CHECK(pruned.node_count() > cfg.n_contract);
    }
}

TEST_CASE("scam contracts are topologically separable after pruning") {
    // The planted signal: fan-in stars give scams a much higher in-degree
    // than the typical benign contract, while the benign trading core owns
    // the principal HITS eigenvector, leaving scam authorities near zero.
    for (std::uint64_t seed : {51, 52, 53}) {
        auto cfg = small_config(seed);
        auto w = ingest_world(generate(cfg));
        auto pruned = prune_low_degree(w.graph, 2);
        auto h = hits(pruned);
        REQUIRE(h.has_edges);
        double scam_in = 0, benign_in = 0, scam_auth = 0, benign_auth = 0;
        int scam_n = 0, benign_n = 0;
        for (const auto& [addr, label] : w.labels) {
            int v = pruned.index_of(addr);
            if (v < 0) continue;
            if (label == 1) {
                scam_in += pruned.in_degree(v);
                scam_auth += h.authority[static_cast<size_t>(v)];
                ++scam_n;
            } else {
                benign_in += pruned.in_degree(v);
                benign_auth += h.authority[static_cast<size_t>(v)];
                ++benign_n;
            }
        }
        REQUIRE(scam_n > 0);
        REQUIRE(benign_n > 0);
        CHECK(scam_in / scam_n > 1.5 * benign_in / benign_n);
        CHECK(scam_auth / scam_n < benign_auth / benign_n);
    }
}

TEST_CASE("values stay inside the 128-bit budget") {
    SynthConfig cfg = small_config(61);
    cfg.value_log10_mean = 26.0;
    cfg.value_log10_std = 3.0;
    auto out = generate(cfg);
    std::istringstream tx(out.transactions_csv);
    auto records = parse_transactions(tx);  // would throw on overflow
    CHECK(!records.empty());
}
