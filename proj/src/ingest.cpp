#include "scamnet/ingest.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "scamnet/common.hpp"

namespace scamnet {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

std::string strip_cr(std::string s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
    return s;
}

[[noreturn]] void row_error(size_t line_no, const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
}

std::string parse_address_field(const std::string& raw, size_t line_no, const char* col) {
    if (!is_valid_address(raw)) row_error(line_no, std::string("malformed ") + col + " '" + raw + "'");
    return normalize_address(raw);
}

}  // namespace

std::vector<TxRecord> parse_transactions(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty transactions stream");
    if (strip_cr(line) != "from_address,to_address,value_wei,block_timestamp")
        throw DataError("bad transactions header: '" + line + "'");

    std::vector<TxRecord> records;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 4) row_error(line_no, "expected 4 columns, got " + std::to_string(fields.size()));
        TxRecord r;
        r.from_address = parse_address_field(fields[0], line_no, "from_address");
        if (fields[1].empty()) row_error(line_no, "empty to_address (contract creation rows not supported)");
        r.to_address = parse_address_field(fields[1], line_no, "to_address");
        try {
            r.value_wei = parse_wei(fields[2]);
        } catch (const DataError& e) {
            row_error(line_no, e.what());
        }
        try {
            r.timestamp = std::stoll(fields[3]);
        } catch (const std::exception&) {
            row_error(line_no, "bad timestamp '" + fields[3] + "'");
        }
        records.push_back(std::move(r));
    }
    return records;
}

KindMap load_kinds(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "address,kind")
        throw DataError("bad kinds header");
    KindMap kinds;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2) row_error(line_no, "expected 2 columns");
        std::string addr = parse_address_field(fields[0], line_no, "address");
        NodeKind kind;
        if (fields[1] == "eoa") kind = NodeKind::Eoa;
        else if (fields[1] == "contract") kind = NodeKind::Contract;
        else row_error(line_no, "kind must be eoa or contract, got '" + fields[1] + "'");
        auto [it, inserted] = kinds.emplace(addr, kind);
        if (!inserted && it->second != kind)
            throw DataError("conflicting kind entries for address " + addr);
    }
    return kinds;
}

LabelMap load_labels(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != "address,label")
        throw DataError("bad labels header");
    LabelMap labels;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (fields.size() != 2) row_error(line_no, "expected 2 columns");
        std::string addr = parse_address_field(fields[0], line_no, "address");
        if (fields[1] != "0" && fields[1] != "1")
            row_error(line_no, "label must be 0 or 1, got '" + fields[1] + "'");
        int label = fields[1] == "1" ? 1 : 0;
        auto [it, inserted] = labels.emplace(addr, label);
        if (!inserted && it->second != label)
            throw DataError("conflicting label entries for address " + addr);
    }
    return labels;
}

TxGraph build_graph(const std::vector<TxRecord>& records, const KindMap& kinds) {
    std::vector<std::string> addrs;
    addrs.reserve(records.size() * 2);
    for (const auto& r : records) {
        addrs.push_back(r.from_address);
        addrs.push_back(r.to_address);
    }
    std::sort(addrs.begin(), addrs.end());
    addrs.erase(std::unique(addrs.begin(), addrs.end()), addrs.end());

    std::unordered_map<std::string, int> index;
    index.reserve(addrs.size());
    for (size_t i = 0; i < addrs.size(); ++i) index[addrs[i]] = static_cast<int>(i);

    std::vector<NodeKind> node_kinds(addrs.size(), NodeKind::Eoa);
    for (size_t i = 0; i < addrs.size(); ++i) {
        auto it = kinds.find(addrs[i]);
        if (it != kinds.end()) node_kinds[i] = it->second;
    }

    // Collapse parallel transactions into summed weights.
    std::vector<std::map<int, Wei>> acc(addrs.size());
    for (const auto& r : records) {
        int u = index[r.from_address];
        int v = index[r.to_address];
        acc[static_cast<size_t>(u)][v] += r.value_wei;
    }
    std::vector<std::vector<std::pair<int, Wei>>> out(addrs.size());
    for (size_t u = 0; u < addrs.size(); ++u) {
        out[u].assign(acc[u].begin(), acc[u].end());
    }
    return TxGraph(std::move(addrs), std::move(node_kinds), std::move(out));
}

TxGraph prune_low_degree(const TxGraph& g, int min_total_degree) {
    const int n = g.node_count();
    std::vector<int> degree(static_cast<size_t>(n));
    std::vector<char> removed(static_cast<size_t>(n), 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v) {
        degree[static_cast<size_t>(v)] = g.total_degree(v);
        if (degree[static_cast<size_t>(v)] < min_total_degree) queue.push_back(v);
    }
    // Peel until fixed point. Self-loops contribute 2 to the owner's degree
    // and vanish with it, touching no neighbor counts.
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        if (removed[static_cast<size_t>(v)]) continue;
        removed[static_cast<size_t>(v)] = 1;
        for (const auto& [u, w] : g.out_edges(v)) {
            if (u == v || removed[static_cast<size_t>(u)]) continue;
            if (--degree[static_cast<size_t>(u)] < min_total_degree) queue.push_back(u);
        }
        for (const auto& [u, w] : g.in_edges(v)) {
            if (u == v || removed[static_cast<size_t>(u)]) continue;
            if (--degree[static_cast<size_t>(u)] < min_total_degree) queue.push_back(u);
        }
    }

    std::vector<std::string> addrs;
    std::vector<NodeKind> kinds;
    std::vector<int> remap(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (removed[static_cast<size_t>(v)]) continue;
        remap[static_cast<size_t>(v)] = static_cast<int>(addrs.size());
        addrs.push_back(g.address(v));
        kinds.push_back(g.kind(v));
    }
    std::vector<std::vector<std::pair<int, Wei>>> out(addrs.size());
    for (int v = 0; v < n; ++v) {
        int nv = remap[static_cast<size_t>(v)];
        if (nv < 0) continue;
        for (const auto& [u, w] : g.out_edges(v)) {
            int nu = remap[static_cast<size_t>(u)];
            if (nu >= 0) out[static_cast<size_t>(nv)].emplace_back(nu, w);
        }
    }
    return TxGraph(std::move(addrs), std::move(kinds), std::move(out));
}

std::string graph_to_json(const TxGraph& g) {
    nlohmann::ordered_json doc;
    doc["nodes"] = nlohmann::ordered_json::array();
    doc["edges"] = nlohmann::ordered_json::array();
    for (int v = 0; v < g.node_count(); ++v) {
        doc["nodes"].push_back({{"address", g.address(v)},
                                {"kind", g.kind(v) == NodeKind::Contract ? "contract" : "eoa"}});
    }
    for (int v = 0; v < g.node_count(); ++v) {
        for (const auto& [u, w] : g.out_edges(v)) {
            doc["edges"].push_back({{"from", g.address(v)},
                                    {"to", g.address(u)},
                                    {"weight_wei", wei_to_string(w)}});
        }
    }
    return doc.dump(2) + "\n";
}

TxGraph graph_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("bad graph snapshot: ") + e.what());
    }
    std::vector<std::pair<std::string, NodeKind>> nodes;
    for (const auto& node : doc.at("nodes")) {
        std::string addr = node.at("address").get<std::string>();
        std::string kind = node.at("kind").get<std::string>();
        if (!is_valid_address(addr)) throw DataError("bad address in snapshot: " + addr);
        nodes.emplace_back(normalize_address(addr),
                           kind == "contract" ? NodeKind::Contract : NodeKind::Eoa);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());

    std::unordered_map<std::string, int> index;
    std::vector<std::string> addrs;
    std::vector<NodeKind> kinds;
    for (auto& [addr, kind] : nodes) {
        if (index.count(addr)) throw DataError("conflicting kinds in snapshot for " + addr);
        index[addr] = static_cast<int>(addrs.size());
        addrs.push_back(addr);
        kinds.push_back(kind);
    }

    std::vector<std::map<int, Wei>> acc(addrs.size());
    for (const auto& edge : doc.at("edges")) {
        std::string from = normalize_address(edge.at("from").get<std::string>());
        std::string to = normalize_address(edge.at("to").get<std::string>());
        auto fu = index.find(from);
        auto fv = index.find(to);
        if (fu == index.end() || fv == index.end())
            throw DataError("snapshot edge endpoint not in node list: " + from + " -> " + to);
        Wei w = parse_wei(edge.at("weight_wei").get<std::string>());
        if (acc[static_cast<size_t>(fu->second)].count(fv->second))
            throw DataError("duplicate snapshot edge " + from + " -> " + to);
        acc[static_cast<size_t>(fu->second)][fv->second] = w;
    }
    std::vector<std::vector<std::pair<int, Wei>>> out(addrs.size());
    for (size_t u = 0; u < addrs.size(); ++u) out[u].assign(acc[u].begin(), acc[u].end());
    return TxGraph(std::move(addrs), std::move(kinds), std::move(out));
}

}  // namespace scamnet
