#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "scamnet/common.hpp"

namespace scamnet {

enum class NodeKind { Eoa, Contract };

struct TxRecord {
    std::string from_address;  // lowercase 0x-hex
    std::string to_address;
    Wei value_wei = 0;
    std::int64_t timestamp = 0;
};

// Directed weighted simple graph over addresses. Parallel transactions are
// collapsed into summed edge weights; self-loops are kept and count once
// toward in-degree and once toward out-degree. Nodes are stored sorted by
// address so that identical edge sets give identical graphs regardless of
// input order. Immutable after construction.
class TxGraph {
  public:
    TxGraph() = default;

    // addrs must be sorted unique; kinds aligned with addrs.
    TxGraph(std::vector<std::string> addrs, std::vector<NodeKind> kinds,
            std::vector<std::vector<std::pair<int, Wei>>> out_edges);

    int node_count() const { return static_cast<int>(addrs_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    const std::vector<std::string>& addresses() const { return addrs_; }
    const std::string& address(int v) const { return addrs_[static_cast<size_t>(v)]; }
    NodeKind kind(int v) const { return kinds_[static_cast<size_t>(v)]; }

    // -1 when absent.
    int index_of(const std::string& addr) const;
    bool contains(const std::string& addr) const { return index_of(addr) >= 0; }

    // Neighbor lists sorted by neighbor index.
    const std::vector<std::pair<int, Wei>>& out_edges(int v) const {
        return out_[static_cast<size_t>(v)];
    }
    const std::vector<std::pair<int, Wei>>& in_edges(int v) const {
        return in_[static_cast<size_t>(v)];
    }

    int in_degree(int v) const { return static_cast<int>(in_[static_cast<size_t>(v)].size()); }
    int out_degree(int v) const { return static_cast<int>(out_[static_cast<size_t>(v)].size()); }
    int total_degree(int v) const { return in_degree(v) + out_degree(v); }

  private:
    std::vector<std::string> addrs_;
    std::vector<NodeKind> kinds_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<std::pair<int, Wei>>> out_;
    std::vector<std::vector<std::pair<int, Wei>>> in_;
    std::size_t edge_count_ = 0;
};

using LabelMap = std::unordered_map<std::string, int>;
using KindMap = std::unordered_map<std::string, NodeKind>;

}  // namespace scamnet
