#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scamnet/common.hpp"

namespace scamnet {

struct ConfusionMatrix {
    long long tp = 0, fp = 0, fn = 0, tn = 0;
};

struct Metrics {
    double accuracy = 0, precision = 0, recall = 0, f1 = 0;
};

struct SplitResult {
    std::vector<int> train;
    std::vector<int> test;
};

// Stratified split over 0/1 labels; per-class test count =
// round(class_count * test_fraction), minimum 1. Seeded shuffle. Labels
// with value -1 (unlabeled) are excluded from both sides.
SplitResult stratified_split(const std::vector<int>& labels, double test_fraction,
                             std::uint64_t seed);

// prob >= threshold counts as positive.
ConfusionMatrix confusion(const std::vector<double>& probs, const std::vector<int>& labels,
                          double threshold = 0.5);

// Zero denominators yield 0 by convention.
Metrics metrics(const ConfusionMatrix& cm);

}  // namespace scamnet
