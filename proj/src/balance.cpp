#include "scamnet/balance.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "scamnet/common.hpp"

namespace scamnet {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

// Indices of the k nearest rows to `query` among `pool` (row indices into
// s.features), excluding exclude_idx. Ties broken by lower row index.
std::vector<int> k_nearest(const LabeledSamples& s, const std::vector<double>& query,
                           const std::vector<int>& pool, int exclude_idx, int k) {
    std::vector<std::pair<double, int>> dists;
    dists.reserve(pool.size());
    for (int i : pool) {
        if (i == exclude_idx) continue;
        dists.emplace_back(sq_dist(query, s.features[static_cast<size_t>(i)]), i);
    }
    std::sort(dists.begin(), dists.end());
    if (static_cast<int>(dists.size()) > k) dists.resize(static_cast<size_t>(k));
    std::vector<int> out;
    out.reserve(dists.size());
    for (auto& [d, i] : dists) out.push_back(i);
    return out;
}

std::pair<std::vector<int>, std::vector<int>> split_by_label(const std::vector<int>& labels) {
    std::vector<int> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i)
        (labels[i] == 1 ? pos : neg).push_back(static_cast<int>(i));
    return {pos, neg};
}

}  // namespace

LabeledSamples smote(const LabeledSamples& s, int k, double target_ratio,
                     std::uint64_t rng_seed) {
    auto [pos, neg] = split_by_label(s.labels);
    const std::vector<int>& minority = pos.size() <= neg.size() ? pos : neg;
    const std::vector<int>& majority = pos.size() <= neg.size() ? neg : pos;
    const long long n_synth = static_cast<long long>(
        std::ceil(target_ratio * static_cast<double>(majority.size()))) -
        static_cast<long long>(minority.size());
    LabeledSamples out = s;
    if (n_synth <= 0) return out;
    if (minority.size() < 2) throw DataError("smote: minority class has fewer than 2 samples");
    k = std::min(k, static_cast<int>(minority.size()) - 1);

    const int minority_label = s.labels[static_cast<size_t>(minority[0])];
    // Neighbor lists are static; precompute per minority row.
    std::vector<std::vector<int>> nn(minority.size());
    for (size_t i = 0; i < minority.size(); ++i)
        nn[i] = k_nearest(s, s.features[static_cast<size_t>(minority[i])], minority, minority[i], k);

    Rng rng(rng_seed);
    for (long long t = 0; t < n_synth; ++t) {
        size_t seed_pos = static_cast<size_t>(t % static_cast<long long>(minority.size()));
        const auto& x = s.features[static_cast<size_t>(minority[seed_pos])];
        const auto& neighbors = nn[seed_pos];
        const auto& x_nn =
            s.features[static_cast<size_t>(neighbors[static_cast<size_t>(rng.uniform_int(
                static_cast<int>(neighbors.size())))])];
        double lambda = rng.uniform();
        std::vector<double> row(x.size());
        for (size_t j = 0; j < x.size(); ++j) row[j] = x[j] + lambda * (x_nn[j] - x[j]);
        out.features.push_back(std::move(row));
        out.labels.push_back(minority_label);
        out.provenance.push_back(Provenance::Synthetic);
    }
    return out;
}

LabeledSamples enn(const LabeledSamples& s, int k) {
    const int n = static_cast<int>(s.features.size());
    if (n <= k) throw DataError("enn: need more rows than k");
    std::vector<int> all(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<size_t>(i)] = i;

    std::vector<char> remove(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        std::vector<int> nbrs = k_nearest(s, s.features[static_cast<size_t>(i)], all, i, k);
        int agree = 0;
        for (int j : nbrs)
            if (s.labels[static_cast<size_t>(j)] == s.labels[static_cast<size_t>(i)]) ++agree;
        int disagree = static_cast<int>(nbrs.size()) - agree;
        if (disagree > agree) remove[static_cast<size_t>(i)] = 1;
    }
    LabeledSamples out;
    for (int i = 0; i < n; ++i) {
        if (remove[static_cast<size_t>(i)]) continue;
        out.features.push_back(s.features[static_cast<size_t>(i)]);
        out.labels.push_back(s.labels[static_cast<size_t>(i)]);
        out.provenance.push_back(s.provenance[static_cast<size_t>(i)]);
    }
    if (out.features.empty()) throw DataError("enn removed every sample");
    return out;
}

LabeledSamples smote_enn(const LabeledSamples& s, int k_smote, int k_enn, double target_ratio,
                         std::uint64_t rng_seed, ResampleReport* report) {
    auto count = [](const LabeledSamples& x, int label) {
        int c = 0;
        for (int l : x.labels) c += (l == label);
        return c;
    };
    LabeledSamples oversampled = smote(s, k_smote, target_ratio, rng_seed);
    LabeledSamples cleaned = enn(oversampled, k_enn);
    if (report) {
        report->pos_before = count(s, 1);
        report->neg_before = count(s, 0);
        report->pos_after_smote = count(oversampled, 1);
        report->neg_after_smote = count(oversampled, 0);
        report->pos_after = count(cleaned, 1);
        report->neg_after = count(cleaned, 0);
    }
    return cleaned;
}

EgoBatch ego_subgraph(const std::vector<std::vector<int>>& adjacency,
                      const std::vector<int>& labels, int center, int radius) {
    const int n = static_cast<int>(adjacency.size());
    if (center < 0 || center >= n) throw DataError("ego_subgraph: bad center index");
    std::vector<int> dist(static_cast<size_t>(n), -1);
    std::deque<int> queue;
    dist[static_cast<size_t>(center)] = 0;
    queue.push_back(center);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (dist[static_cast<size_t>(u)] == radius) continue;
        for (int v : adjacency[static_cast<size_t>(u)]) {
            if (dist[static_cast<size_t>(v)] >= 0) continue;
            dist[static_cast<size_t>(v)] = dist[static_cast<size_t>(u)] + 1;
            queue.push_back(v);
        }
    }
    EgoBatch batch;
    batch.center = center;
    batch.center_label = labels[static_cast<size_t>(center)];
    std::vector<int> local(static_cast<size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        if (dist[static_cast<size_t>(v)] < 0) continue;
        local[static_cast<size_t>(v)] = static_cast<int>(batch.node_indices.size());
        batch.node_indices.push_back(v);
    }
    for (int v : batch.node_indices) {
        for (int u : adjacency[static_cast<size_t>(v)]) {
            if (u <= v || local[static_cast<size_t>(u)] < 0) continue;
            batch.adjacency.emplace_back(local[static_cast<size_t>(v)], local[static_cast<size_t>(u)]);
        }
    }
    std::sort(batch.adjacency.begin(), batch.adjacency.end());
    return batch;
}

EgoBatch ego_subgraph(const ContractDataset& ds, int center, int radius) {
    return ego_subgraph(ds.adjacency(), ds.labels, center, radius);
}

BalancedBatchSampler::BalancedBatchSampler(const ContractDataset& ds,
                                           const std::vector<int>& eligible, int batch_size,
                                           double minority_fraction, int radius,
                                           std::uint64_t rng_seed)
    : ds_(ds), adjacency_(ds.adjacency()), batch_size_(batch_size), radius_(radius),
      rng_(rng_seed) {
    std::vector<int> pos, neg;
    for (int i : eligible) {
        int l = ds.labels[static_cast<size_t>(i)];
        if (l == 1) pos.push_back(i);
        else if (l == 0) neg.push_back(i);
    }
    minority_ = pos.size() <= neg.size() ? pos : neg;
    majority_ = pos.size() <= neg.size() ? neg : pos;
    if (minority_.empty() || majority_.empty())
        throw DataError("balanced sampler needs both classes among eligible contracts");
    n_minority_per_batch_ = static_cast<int>(
        std::ceil(minority_fraction * static_cast<double>(batch_size)));
    n_minority_per_batch_ = std::min(n_minority_per_batch_, batch_size);
}

std::vector<EgoBatch> BalancedBatchSampler::next_batch() {
    std::vector<EgoBatch> batch;
    batch.reserve(static_cast<size_t>(batch_size_));
    for (int i = 0; i < batch_size_; ++i) {
        const std::vector<int>& pool = i < n_minority_per_batch_ ? minority_ : majority_;
        int center = pool[static_cast<size_t>(rng_.uniform_int(static_cast<int>(pool.size())))];
        batch.push_back(ego_subgraph(adjacency_, ds_.labels, center, radius_));
    }
    return batch;
}

}  // namespace scamnet
