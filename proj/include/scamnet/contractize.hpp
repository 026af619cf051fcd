#pragma once

#include <set>
#include <string>
#include <vector>

#include "scamnet/graph.hpp"
#include "scamnet/topo.hpp"

namespace scamnet {

struct ContractEdge {
    int a = 0;  // contract indices, a < b
    int b = 0;
    int shared_count = 0;
};

// Contract-level dataset: aggregated features, optional labels, and the
// undirected shared-EOA contract graph. Contracts are sorted by address.
struct ContractDataset {
    std::vector<std::string> contracts;
    std::vector<FeatureRow> features;
    std::vector<int> labels;  // 0/1, -1 when absent
    std::vector<ContractEdge> edges;
    std::string feature_order_version = kFeatureOrderVersion;

    std::vector<std::vector<int>> adjacency() const;  // undirected neighbor lists
};

// 1-hop, direction-agnostic EOA neighbors of contract c (graph index).
// Throws DataError when c is not a contract.
std::set<int> eoa_neighborhood(const TxGraph& g, int c);

// Contract features become the elementwise mean of their EOA neighborhood
// rows; contracts with no EOA neighbors keep their own row. m must be
// aligned with g's node order. Labels joined from `labels` (absent -> -1).
ContractDataset aggregate_contract_features(const TxGraph& g, const FeatureMatrix& m,
                                            const LabelMap& labels);

// Undirected edge between contracts sharing >= 1 EOA neighbor; weight =
// intersection size.
std::vector<ContractEdge> project_contract_graph(const TxGraph& g);

std::string contract_dataset_to_json(const ContractDataset& ds, const std::string& config_hash);
ContractDataset contract_dataset_from_json(const std::string& text);

}  // namespace scamnet
