#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adr/distributions.hpp"
#include "adr/sample.hpp"

namespace adr {

// 2k - 2 ln L. Lower is better.
double aic(const FittedModel &fit);

struct VuongResult {
    Family first = Family::Geometric;
    Family second = Family::Geometric;
    double statistic = 0.0;
    double p_value = 1.0;
    std::optional<Family> preferred; // nullopt = tie
    bool degenerate = false; // zero-variance ratios or an impossible sample
};

// Vuong's closeness test on pointwise log-likelihood ratios, two-sided
// normal p-value, significance 0.05.
VuongResult vuong(const FittedModel &a, const FittedModel &b,
                  const FrequencySample &sample);

struct ModelSelectionReport {
    std::vector<FittedModel> fits;  // sorted by family name
    std::vector<double> aics;       // aligned with fits; +inf when logL = -inf
    std::vector<VuongResult> pairwise;
    Family winner = Family::Geometric;
    bool vuong_disagreement = false;
    std::string rationale;

    std::string to_text() const;
    void save(const std::string &path) const;
    static ModelSelectionReport load(const std::string &path);
};

// AIC picks the winner; every pairwise Vuong test is run as confirmation.
// A Vuong head-to-head that prefers another family over the AIC winner
// only sets the disagreement flag. AIC ties break lexicographically on
// the family name. The continuous log-logistic is not a valid candidate.
ModelSelectionReport select_best(const std::vector<FittedModel> &fits,
                                 const FrequencySample &sample);

} // namespace adr
