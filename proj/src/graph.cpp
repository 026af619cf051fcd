#include "scamnet/graph.hpp"

namespace scamnet {

TxGraph::TxGraph(std::vector<std::string> addrs, std::vector<NodeKind> kinds,
                 std::vector<std::vector<std::pair<int, Wei>>> out_edges)
    : addrs_(std::move(addrs)), kinds_(std::move(kinds)), out_(std::move(out_edges)) {
    const size_t n = addrs_.size();
    index_.reserve(n);
    for (size_t i = 0; i < n; ++i) index_[addrs_[i]] = static_cast<int>(i);
    in_.assign(n, {});
    for (size_t u = 0; u < n; ++u) {
        for (auto& [v, w] : out_[u]) {
            in_[static_cast<size_t>(v)].emplace_back(static_cast<int>(u), w);
        }
        edge_count_ += out_[u].size();
    }
    // out_ lists are built sorted by target; in_ ends up sorted by source
    // because u increases monotonically above.
}

int TxGraph::index_of(const std::string& addr) const {
    auto it = index_.find(addr);
    return it == index_.end() ? -1 : it->second;
}

}  // namespace scamnet
