#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace incrsa {

// A normalized probability vector over a labeled finite support.
//
// Built from non-negative weights. If every weight is zero the distribution
// is marked empty-support instead of dividing by zero; callers treat the
// log of an empty-support row as -inf rather than raising.
class Distribution {
  public:
    Distribution() = default;

    // Normalizes `weights` over `labels`. Throws std::invalid_argument on
    // negative or non-finite weights or mismatched sizes.
    static Distribution from_weights(std::vector<std::string> labels,
                                     const std::vector<double>& weights);

    // Uniform distribution over `labels` (must be non-empty).
    static Distribution uniform(std::vector<std::string> labels);

    bool empty_support() const { return empty_; }
    std::size_t size() const { return labels_.size(); }

    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& values() const { return values_; }

    double value_at(std::size_t i) const { return values_[i]; }
    const std::string& label_at(std::size_t i) const { return labels_[i]; }

    // Probability mass of `label`; 0.0 when the label is not in the support.
    double mass(std::string_view label) const;

    // Largest absolute difference against a sparse expectation: labels
    // missing from `expected` are expected to carry zero mass, and expected
    // labels missing from the support count as full deviation.
    double max_abs_deviation(
        const std::vector<std::pair<std::string, double>>& expected) const;

  private:
    std::vector<std::string> labels_;
    std::vector<double> values_;
    bool empty_ = true;
};

}  // namespace incrsa
