#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "adr/sample.hpp"

namespace adr {

// Candidate randomness models. The five discrete families compete in
// model selection; the continuous log-logistic exists for fit plots only.
enum class Family {
    Geometric,
    LogLogistic,
    NegativeBinomial,
    Poisson,
    PowerLaw,
    YuleSimon,
};

const std::string &family_name(Family family);
Family family_from_name(const std::string &name);
bool is_discrete(Family family);
int param_count(Family family); // the k in AIC

// Per-family meaning of the slots:
//   geometric           primary = p in (0, 1]
//   poisson             primary = lambda > 0
//   negative_binomial   primary = r > 0, secondary = theta in (0, 1)
//   power_law           primary = alpha > 1
//   yule_simon          primary = rho > 0
//   log_logistic        primary = scale > 0, secondary = shape > 0
struct DistParams {
    double primary = 0.0;
    double secondary = 0.0;
};

std::vector<std::pair<std::string, double>> named_params(Family family,
                                                         const DistParams &p);

// ln P(x). Returns -infinity outside the family's support (the support is
// x >= 1 except Poisson, which keeps its natural x >= 0); throws Domain
// for parameters outside the family's domain. Everything is evaluated in
// log space, so x up to 1e9 and beyond stays finite.
double log_pmf(Family family, const DistParams &params, uint64_t x);
double pmf(Family family, const DistParams &params, uint64_t x);

// Sum of count-weighted ln pmf over the sample.
double log_likelihood(Family family, const DistParams &params,
                      const FrequencySample &sample);

struct FittedModel {
    Family family = Family::Geometric;
    DistParams params;
    double log_likelihood = 0.0;
    int k = 1;
    uint64_t n = 0;
    bool boundary = false; // optimum pinned at the search bracket edge
};

// Maximum-likelihood fit. Geometric and Poisson are closed-form; the
// searched families use a log-scale bracket scan on [1e-6, 1e6] followed
// by golden-section refinement to 1e-8 relative tolerance.
FittedModel fit_mle(Family family, const FrequencySample &sample);

// n i.i.d. draws by inverse CDF on the family's natural integer support,
// deterministic for a given seed. Not available for log_logistic.
std::vector<uint64_t> sample_from(Family family, const DistParams &params,
                                  size_t n, uint64_t seed);

// One fit per line, `key=value` fields.
void save_fits(const std::vector<FittedModel> &fits, const std::string &path);
std::vector<FittedModel> load_fits(const std::string &path);

} // namespace adr
