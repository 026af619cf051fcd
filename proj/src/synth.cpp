#include "scamnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "scamnet/rng.hpp"

namespace scamnet {

namespace {

// Fabricated but syntactically valid addresses, namespaced by role.
std::string make_address(unsigned role, unsigned index) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "0x%08x%032x", role, index);
    return buf;
}

Wei lognormal_wei(Rng& rng, double log10_mean, double log10_std) {
    double x = log10_mean + log10_std * rng.normal();
    x = std::clamp(x, 0.0, 27.0);  // well under 2^128
    long double v = powl(10.0L, static_cast<long double>(x));
    return static_cast<Wei>(v);
}

int poisson(Rng& rng, double mean) {
    // Knuth's method; means here are small.
    double l = std::exp(-mean);
    int k = 0;
    double p = 1.0;
    do {
        ++k;
        p *= rng.uniform();
    } while (p > l);
    return k - 1;
}

struct Tx {
    std::string from, to;
    Wei value;
    std::int64_t ts;
};

}  // namespace

void validate_synth_config(const SynthConfig& cfg) {
    if (cfg.n_eoa <= 0 || cfg.n_contract <= 0 || cfg.n_scam <= 0)
        throw UsageError("synth: all counts must be positive");
    if (cfg.n_scam >= cfg.n_contract)
        throw UsageError("synth: n_scam must be less than n_contract");
    if (cfg.scam_fan_in < 2) throw UsageError("synth: scam_fan_in must be >= 2");
    if (cfg.background_tx_per_eoa < 2.0)
        throw UsageError("synth: background_tx_per_eoa must be >= 2 to survive pruning");
}

SynthOutput generate(const SynthConfig& cfg) {
    validate_synth_config(cfg);
    Rng rng(cfg.seed);

    const int n_benign = cfg.n_contract - cfg.n_scam;
    std::vector<std::string> eoas, benign, scams;
    for (int i = 0; i < cfg.n_eoa; ++i) eoas.push_back(make_address(0x0e0a0001, static_cast<unsigned>(i)));
    for (int i = 0; i < n_benign; ++i) benign.push_back(make_address(0xc0000001, static_cast<unsigned>(i)));
    for (int i = 0; i < cfg.n_scam; ++i) scams.push_back(make_address(0x5ca30001, static_cast<unsigned>(i)));
    const std::string collector = make_address(0xc011ec70, 0);

    // Mild power-law popularity over benign contracts.
    std::vector<double> cum(static_cast<size_t>(n_benign));
    double total = 0.0;
    for (int i = 0; i < n_benign; ++i) {
        total += 1.0 / std::pow(static_cast<double>(i + 1), 0.6);
        cum[static_cast<size_t>(i)] = total;
    }
    auto pick_benign = [&]() {
        double u = rng.uniform() * total;
        return static_cast<int>(std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    };

    std::int64_t ts = 1577836800;
    std::vector<Tx> txs;

    // Background trade: every EOA makes at least 2 transactions so the
    // degree-2 prune keeps it.
    for (int i = 0; i < cfg.n_eoa; ++i) {
        int k = 2 + poisson(rng, cfg.background_tx_per_eoa - 2.0);
        for (int t = 0; t < k; ++t) {
            const std::string& c = benign[static_cast<size_t>(pick_benign())];
            Wei v = lognormal_wei(rng, cfg.value_log10_mean, cfg.value_log10_std);
            if (rng.uniform() < 0.5) txs.push_back({eoas[static_cast<size_t>(i)], c, v, ts++});
            else txs.push_back({c, eoas[static_cast<size_t>(i)], v, ts++});
        }
    }

    // Scam motif: fan-in from fresh one-shot funders, a keep-alive inbound
    // transfer per funder, and one outbound cash-out to the collector.
    unsigned funder_index = 0;
    for (int s = 0; s < cfg.n_scam; ++s) {
        for (int f = 0; f < cfg.scam_fan_in; ++f) {
            std::string funder = make_address(0xf0bd0001, funder_index++);
            Wei small = lognormal_wei(rng, cfg.value_log10_mean - 2.0, cfg.value_log10_std);
            // Keep-alive: a background EOA funds the funder first.
            const std::string& sponsor = eoas[static_cast<size_t>(rng.uniform_int(cfg.n_eoa))];
            txs.push_back({sponsor, funder, small, ts++});
            txs.push_back({funder, scams[static_cast<size_t>(s)], small, ts++});
        }
        Wei out = lognormal_wei(rng, cfg.value_log10_mean, cfg.value_log10_std);
        txs.push_back({scams[static_cast<size_t>(s)], collector, out, ts++});
    }

    SynthOutput output;
    std::ostringstream tx_csv;
    tx_csv << "from_address,to_address,value_wei,block_timestamp\n";
    for (const Tx& tx : txs)
        tx_csv << tx.from << "," << tx.to << "," << wei_to_string(tx.value) << "," << tx.ts << "\n";
    output.transactions_csv = tx_csv.str();

    std::ostringstream kinds_csv;
    kinds_csv << "address,kind\n";
    for (const auto& c : benign) kinds_csv << c << ",contract\n";
    for (const auto& c : scams) kinds_csv << c << ",contract\n";
    output.kinds_csv = kinds_csv.str();

    std::ostringstream labels_csv;
    labels_csv << "address,label\n";
    for (const auto& c : benign) labels_csv << c << ",0\n";
    for (const auto& c : scams) labels_csv << c << ",1\n";
    output.labels_csv = labels_csv.str();
    return output;
}

}  // namespace scamnet
