#include "incrsa/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace incrsa {

Distribution Distribution::from_weights(std::vector<std::string> labels,
                                        const std::vector<double>& weights) {
    if (labels.size() != weights.size()) {
        throw std::invalid_argument("distribution: labels/weights size mismatch");
    }
    double total = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("distribution: weight must be finite and >= 0");
        }
        total += w;
    }
    Distribution d;
    d.labels_ = std::move(labels);
    d.values_.assign(d.labels_.size(), 0.0);
    if (total > 0.0) {
        for (std::size_t i = 0; i < weights.size(); ++i) {
            d.values_[i] = weights[i] / total;
        }
        d.empty_ = false;
    } else {
        d.empty_ = true;
    }
    return d;
}

Distribution Distribution::uniform(std::vector<std::string> labels) {
    if (labels.empty()) {
        throw std::invalid_argument("distribution: uniform over empty support");
    }
    std::vector<double> w(labels.size(), 1.0);
    return from_weights(std::move(labels), w);
}

double Distribution::mass(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        if (labels_[i] == label) return values_[i];
    }
    return 0.0;
}

double Distribution::max_abs_deviation(
    const std::vector<std::pair<std::string, double>>& expected) const {
    double dev = 0.0;
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        double want = 0.0;
        for (const auto& [label, p] : expected) {
            if (label == labels_[i]) {
                want = p;
                break;
            }
        }
        dev = std::max(dev, std::fabs(values_[i] - want));
    }
    for (const auto& [label, p] : expected) {
        if (std::find(labels_.begin(), labels_.end(), label) == labels_.end()) {
            dev = std::max(dev, std::fabs(p));
        }
    }
    return dev;
}

}  // namespace incrsa
