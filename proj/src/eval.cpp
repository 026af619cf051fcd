#include "scamnet/eval.hpp"

#include <algorithm>
#include <cmath>

#include "scamnet/rng.hpp"

namespace scamnet {

SplitResult stratified_split(const std::vector<int>& labels, double test_fraction,
                             std::uint64_t seed) {
    if (test_fraction <= 0.0 || test_fraction >= 1.0)
        throw DataError("test_fraction must be in (0,1)");
    std::vector<int> pos, neg;
    for (size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == 1) pos.push_back(static_cast<int>(i));
        else if (labels[i] == 0) neg.push_back(static_cast<int>(i));
    }
    if (pos.size() < 2 || neg.size() < 2)
        throw DataError("stratified_split: each class needs at least 2 samples");

    Rng rng(seed);
    SplitResult out;
    for (std::vector<int>* cls : {&pos, &neg}) {
        // Fisher-Yates with the shared stream.
        for (size_t i = cls->size(); i > 1; --i) {
            size_t j = static_cast<size_t>(rng.uniform_int(static_cast<int>(i)));
            std::swap((*cls)[i - 1], (*cls)[j]);
        }
        size_t n_test = static_cast<size_t>(
            std::llround(static_cast<double>(cls->size()) * test_fraction));
        n_test = std::max<size_t>(n_test, 1);
        n_test = std::min(n_test, cls->size() - 1);
        for (size_t i = 0; i < cls->size(); ++i)
            (i < n_test ? out.test : out.train).push_back((*cls)[i]);
    }
    std::sort(out.train.begin(), out.train.end());
    std::sort(out.test.begin(), out.test.end());
    return out;
}

ConfusionMatrix confusion(const std::vector<double>& probs, const std::vector<int>& labels,
                          double threshold) {
    if (probs.empty()) throw DataError("confusion: empty input");
    if (probs.size() != labels.size()) throw DataError("confusion: length mismatch");
    if (threshold <= 0.0 || threshold >= 1.0) throw DataError("threshold must be in (0,1)");
    ConfusionMatrix cm;
    for (size_t i = 0; i < probs.size(); ++i) {
        bool pred = probs[i] >= threshold;
        bool truth = labels[i] == 1;
        if (pred && truth) ++cm.tp;
        else if (pred && !truth) ++cm.fp;
        else if (!pred && truth) ++cm.fn;
        else ++cm.tn;
    }
    return cm;
}

Metrics metrics(const ConfusionMatrix& cm) {
    Metrics m;
    const double total = static_cast<double>(cm.tp + cm.fp + cm.fn + cm.tn);
    m.accuracy = total > 0 ? static_cast<double>(cm.tp + cm.tn) / total : 0.0;
    m.precision = cm.tp + cm.fp > 0 ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp) : 0.0;
    m.recall = cm.tp + cm.fn > 0 ? static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn) : 0.0;
    m.f1 = m.precision + m.recall > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
    return m;
}

}  // namespace scamnet
