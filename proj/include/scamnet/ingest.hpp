#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scamnet/graph.hpp"

namespace scamnet {

// CSV with header `from_address,to_address,value_wei,block_timestamp`.
// Addresses are lowercased; rows with empty to_address are rejected.
// Throws DataError with the 1-based line number on malformed rows.
std::vector<TxRecord> parse_transactions(std::istream& in);

// CSV `address,kind` with kind in {eoa,contract}. Duplicate rows with
// conflicting kinds are a DataError naming the address.
KindMap load_kinds(std::istream& in);

// CSV `address,label` with label in {0,1}. Duplicate conflicting rows
// are a DataError; duplicate identical rows collapse to one entry.
LabelMap load_labels(std::istream& in);

// Union of all endpoints; edge weight = sum of matching record values.
// Addresses absent from kinds default to EOA.
TxGraph build_graph(const std::vector<TxRecord>& records, const KindMap& kinds);

// Iteratively removes nodes with in+out degree < min_total_degree until a
// fixed point (combined-degree k-core). May return an empty graph.
TxGraph prune_low_degree(const TxGraph& g, int min_total_degree = 2);

// JSON snapshot: {nodes:[{address,kind}], edges:[{from,to,weight_wei}]}.
std::string graph_to_json(const TxGraph& g);
TxGraph graph_from_json(const std::string& text);

}  // namespace scamnet
