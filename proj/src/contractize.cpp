#include "scamnet/contractize.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

namespace scamnet {

std::vector<std::vector<int>> ContractDataset::adjacency() const {
    std::vector<std::vector<int>> adj(contracts.size());
    for (const auto& e : edges) {
        adj[static_cast<size_t>(e.a)].push_back(e.b);
        adj[static_cast<size_t>(e.b)].push_back(e.a);
    }
    for (auto& nbrs : adj) std::sort(nbrs.begin(), nbrs.end());
    return adj;
}

std::set<int> eoa_neighborhood(const TxGraph& g, int c) {
    if (g.kind(c) != NodeKind::Contract)
        throw DataError("eoa_neighborhood: " + g.address(c) + " is not a contract");
    std::set<int> nbrs;
    for (const auto& [u, w] : g.in_edges(c))
        if (g.kind(u) == NodeKind::Eoa) nbrs.insert(u);
    for (const auto& [u, w] : g.out_edges(c))
        if (g.kind(u) == NodeKind::Eoa) nbrs.insert(u);
    return nbrs;
}

namespace {

// Contract graph-node indices in address order (graph order is sorted).
std::vector<int> contract_nodes(const TxGraph& g) {
    std::vector<int> out;
    for (int v = 0; v < g.node_count(); ++v)
        if (g.kind(v) == NodeKind::Contract) out.push_back(v);
    return out;
}

}  // namespace

ContractDataset aggregate_contract_features(const TxGraph& g, const FeatureMatrix& m,
                                            const LabelMap& labels) {
    if (m.addresses.size() != static_cast<size_t>(g.node_count()))
        throw DataError("feature matrix does not cover the graph");
    for (int v = 0; v < g.node_count(); ++v)
        if (m.addresses[static_cast<size_t>(v)] != g.address(v))
            throw DataError("feature matrix not aligned with graph node order");

    ContractDataset ds;
    ds.feature_order_version = m.feature_order_version;
    for (int c : contract_nodes(g)) {
        ds.contracts.push_back(g.address(c));
        std::set<int> nbrs = eoa_neighborhood(g, c);
        FeatureRow row{};
        if (nbrs.empty()) {
            row = m.rows[static_cast<size_t>(c)];
        } else {
            for (int e : nbrs)
                for (int j = 0; j < kFeatureDim; ++j)
                    row[static_cast<size_t>(j)] += m.rows[static_cast<size_t>(e)][static_cast<size_t>(j)];
            for (int j = 0; j < kFeatureDim; ++j)
                row[static_cast<size_t>(j)] /= static_cast<double>(nbrs.size());
        }
        ds.features.push_back(row);
        auto it = labels.find(g.address(c));
        ds.labels.push_back(it == labels.end() ? -1 : it->second);
    }
    ds.edges = project_contract_graph(g);
    return ds;
}

std::vector<ContractEdge> project_contract_graph(const TxGraph& g) {
    std::vector<int> contracts = contract_nodes(g);
    if (contracts.empty()) throw DataError("graph has no contracts");
    std::vector<int> contract_index(static_cast<size_t>(g.node_count()), -1);
    for (size_t i = 0; i < contracts.size(); ++i)
        contract_index[static_cast<size_t>(contracts[i])] = static_cast<int>(i);

    // Invert: for each EOA, the contracts it neighbors; each such set
    // contributes 1 to every pair.
    std::vector<std::set<int>> eoa_to_contracts(static_cast<size_t>(g.node_count()));
    for (size_t i = 0; i < contracts.size(); ++i) {
        for (int e : eoa_neighborhood(g, contracts[i]))
            eoa_to_contracts[static_cast<size_t>(e)].insert(static_cast<int>(i));
    }
    std::map<std::pair<int, int>, int> weights;
    for (const auto& cs : eoa_to_contracts) {
        for (auto it = cs.begin(); it != cs.end(); ++it) {
            auto jt = it;
            for (++jt; jt != cs.end(); ++jt) ++weights[{*it, *jt}];
        }
    }
    std::vector<ContractEdge> edges;
    edges.reserve(weights.size());
    for (const auto& [pair, w] : weights) edges.push_back({pair.first, pair.second, w});
    return edges;
}

std::string contract_dataset_to_json(const ContractDataset& ds, const std::string& config_hash) {
    nlohmann::ordered_json doc;
    doc["feature_order_version"] = ds.feature_order_version;
    doc["config_hash"] = config_hash;
    doc["contracts"] = ds.contracts;
    doc["features"] = nlohmann::ordered_json::array();
    for (const auto& row : ds.features)
        doc["features"].push_back(std::vector<double>(row.begin(), row.end()));
    doc["labels"] = nlohmann::ordered_json::array();
    for (int l : ds.labels) {
        if (l < 0)
            doc["labels"].push_back(nullptr);
        else
            doc["labels"].push_back(l);
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : ds.edges)
        doc["edges"].push_back({{"a_index", e.a}, {"b_index", e.b}, {"shared_count", e.shared_count}});
    return doc.dump(2) + "\n";
}

ContractDataset contract_dataset_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("bad contract dataset: ") + e.what());
    }
    ContractDataset ds;
    ds.feature_order_version = doc.at("feature_order_version").get<std::string>();
    if (ds.feature_order_version != kFeatureOrderVersion)
        throw DataError("feature_order_version mismatch: " + ds.feature_order_version);
    ds.contracts = doc.at("contracts").get<std::vector<std::string>>();
    for (const auto& row : doc.at("features")) {
        if (row.size() != kFeatureDim) throw DataError("feature row must have 13 entries");
        FeatureRow r{};
        for (int j = 0; j < kFeatureDim; ++j) r[static_cast<size_t>(j)] = row[static_cast<size_t>(j)].get<double>();
        ds.features.push_back(r);
    }
    for (const auto& l : doc.at("labels")) ds.labels.push_back(l.is_null() ? -1 : l.get<int>());
    const int n = static_cast<int>(ds.contracts.size());
    if (ds.features.size() != ds.contracts.size() || ds.labels.size() != ds.contracts.size())
        throw DataError("contract dataset row counts inconsistent");
    for (const auto& e : doc.at("edges")) {
        ContractEdge ce;
        ce.a = e.at("a_index").get<int>();
        ce.b = e.at("b_index").get<int>();
        ce.shared_count = e.at("shared_count").get<int>();
        if (ce.a < 0 || ce.b < 0 || ce.a >= n || ce.b >= n || ce.a >= ce.b || ce.shared_count < 1)
            throw DataError("bad contract edge");
        ds.edges.push_back(ce);
    }
    return ds;
}

}  // namespace scamnet
