#pragma once

#include <string>
#include <vector>

#include "adr/index.hpp"

namespace adr {

// Corpus-level term weights used as classifier features. All require the
// term to occur in the collection (df >= 1); log base 2 throughout except
// gain's natural log.

// -log2(df / N)
double idf(const TermStats &stats, const CollectionStats &coll);

// residual IDF: observed idf minus the idf a Poisson model predicts,
// -log2(df/N) + log2(1 - e^(-cf/N))
double ridf(const TermStats &stats, const CollectionStats &coll);

// gain: x * (x - 1 - ln x) with x = df/N
double gain(const TermStats &stats, const CollectionStats &coll);

// Feature names in the fixed (lexicographic) order the classifier uses.
const std::vector<std::string> &feature_names();

// Values for one term in feature_names() order.
std::vector<double> compute_features(const TermStats &stats,
                                     const CollectionStats &coll);

double compute_feature(const std::string &name, const TermStats &stats,
                       const CollectionStats &coll);

} // namespace adr
