#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scamnet/contractize.hpp"
#include "scamnet/rng.hpp"

namespace scamnet {

enum class Provenance { Original, Synthetic };

struct LabeledSamples {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;  // 0/1
    std::vector<Provenance> provenance;
};

struct EgoBatch {
    int center = 0;                              // contract index
    std::vector<int> node_indices;               // sorted, contains center
    std::vector<std::pair<int, int>> adjacency;  // induced edges, local indices, a<b
    int center_label = 0;
};

// SMOTE: synthesizes ceil(target_ratio*majority - minority) minority rows,
// each x + lambda*(x_nn - x) with the seed row drawn round-robin from the
// minority rows and x_nn uniform among its k nearest minority neighbors
// (Euclidean, ties broken by lower row index). Originals preserved.
LabeledSamples smote(const LabeledSamples& s, int k = 5, double target_ratio = 1.0,
                     std::uint64_t rng_seed = 0);

// ENN: simultaneously marks every row whose k nearest neighbors (excluding
// itself) majority-vote a different label, then removes all marked rows of
// both classes. Throws when everything would be removed.
LabeledSamples enn(const LabeledSamples& s, int k = 3);

struct ResampleReport {
    int pos_before = 0, neg_before = 0;
    int pos_after_smote = 0, neg_after_smote = 0;
    int pos_after = 0, neg_after = 0;
};

LabeledSamples smote_enn(const LabeledSamples& s, int k_smote = 5, int k_enn = 3,
                         double target_ratio = 1.0, std::uint64_t rng_seed = 0,
                         ResampleReport* report = nullptr);

// BFS to `radius` hops on the undirected contract graph; induced edges.
EgoBatch ego_subgraph(const ContractDataset& ds, int center, int radius = 2);
EgoBatch ego_subgraph(const std::vector<std::vector<int>>& adjacency,
                      const std::vector<int>& labels, int center, int radius);

// Deterministic stream of ego batches: ceil(minority_fraction*batch_size)
// centers drawn uniformly with replacement from the minority contracts,
// the rest from the majority. Only labeled contracts are eligible.
class BalancedBatchSampler {
  public:
    BalancedBatchSampler(const ContractDataset& ds, const std::vector<int>& eligible,
                         int batch_size, double minority_fraction, int radius,
                         std::uint64_t rng_seed);

    std::vector<EgoBatch> next_batch();

  private:
    const ContractDataset& ds_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<int> minority_;
    std::vector<int> majority_;
    int batch_size_;
    int n_minority_per_batch_;
    int radius_;
    Rng rng_;
};

}  // namespace scamnet
