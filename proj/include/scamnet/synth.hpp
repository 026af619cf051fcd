#pragma once

#include <cstdint>
#include <string>

#include "scamnet/common.hpp"

namespace scamnet {

struct SynthConfig {
    int n_eoa = 2000;
    int n_contract = 300;
    int n_scam = 15;
    double background_tx_per_eoa = 3.0;  // mean
    int scam_fan_in = 40;
    double value_log10_mean = 17.0;  // ~0.1 ETH
    double value_log10_std = 1.0;
    std::uint64_t seed = 0;
};

struct SynthOutput {
    std::string transactions_csv;
    std::string kinds_csv;
    std::string labels_csv;
};

// Deterministic transaction world with a planted scam motif: each scam
// contract is funded by `scam_fan_in` distinct one-shot EOAs (each kept
// alive by one extra transaction so the degree-2 prune does not peel the
// motif) and emits at most 2 outbound transfers. Benign contracts trade
// with EOAs under a heavy-tailed popularity distribution.
SynthOutput generate(const SynthConfig& cfg);

void validate_synth_config(const SynthConfig& cfg);  // throws UsageError

}  // namespace scamnet
