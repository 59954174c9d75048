#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace adr {

// Multiset of collection frequencies, stored as a (value, count) histogram.
// Corpus samples hold one observation per non-informative term; synthetic
// samples come from the distribution sampler.
class FrequencySample {
public:
    FrequencySample() = default;

    static FrequencySample from_values(const std::vector<uint64_t> &values);

    const std::vector<std::pair<uint64_t, uint64_t>> &histogram() const {
        return bins_;
    }
    uint64_t size() const { return n_; }
    bool empty() const { return n_ == 0; }
    double mean() const;
    uint64_t max_value() const { return bins_.empty() ? 0 : bins_.back().first; }
    uint64_t min_value() const { return bins_.empty() ? 0 : bins_.front().first; }

    // f(value, count), ascending by value
    template <typename F> void for_each(F &&f) const {
        for (const auto &[value, count] : bins_) f(value, count);
    }

    // `value count` lines, ascending
    void save(const std::string &path) const;
    static FrequencySample load(const std::string &path);

private:
    std::vector<std::pair<uint64_t, uint64_t>> bins_;
    uint64_t n_ = 0;
};

} // namespace adr
