#pragma once

#include <string>
#include <vector>

#include "adr/index.hpp"
#include "adr/sample.hpp"

namespace adr {

struct SeedTerms {
    std::vector<std::string> informative;
    std::vector<std::string> non_informative;

    // Two-column text: `<term> <label>` with label in {info, noninfo}.
    static SeedTerms load(const std::string &path);
};

// Linear max-margin classifier over standardized term features.
// decision > 0 means informative; the boundary itself counts as
// non-informative.
struct TermClassifier {
    std::vector<std::string> features; // subset, lexicographic order
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> mean;   // standardization, from training data only
    std::vector<double> stddev;

    double decision_value(const std::vector<double> &raw_features) const;
    bool is_informative(const TermStats &stats, const CollectionStats &coll) const;
};

struct TrainResult {
    TermClassifier classifier;
    double cv_accuracy = 0.0; // mean fold accuracy at the chosen lambda
    double lambda = 0.0;      // chosen regularization strength
    std::vector<std::string> absent_terms; // seed terms missing from the index
};

struct SubsetAccuracy {
    std::vector<std::string> features;
    double cv_accuracy = 0.0;
};

struct SubsetSearchResult {
    TrainResult best;
    std::vector<SubsetAccuracy> evaluated; // every nonempty subset
};

// Trains hinge-loss linear classifier with quadratic regularization via
// deterministic dual coordinate descent; regularization strength picked
// from {0.01, 0.1, 1, 10} by k-fold cross-validation.
TrainResult train_classifier(const SeedTerms &seeds, const InvertedIndex &index,
                             const std::vector<std::string> &feature_subset,
                             int folds);

// Evaluates every nonempty feature subset; ties go to the smaller subset,
// then lexicographic feature-name order.
SubsetSearchResult select_feature_subset(const SeedTerms &seeds,
                                         const InvertedIndex &index, int folds);

// term -> informative? over the whole vocabulary
std::vector<std::pair<std::string, bool>>
classify_vocabulary(const InvertedIndex &index, const TermClassifier &classifier);

// Collection frequencies of every term classified non-informative.
FrequencySample extract_noninformative_sample(const InvertedIndex &index,
                                              const TermClassifier &classifier);

} // namespace adr
