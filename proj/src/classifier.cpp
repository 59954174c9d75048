#include "adr/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "adr/error.hpp"
#include "adr/features.hpp"

namespace adr {

namespace {

constexpr double kLambdaGrid[] = {0.01, 0.1, 1.0, 10.0};
constexpr double kDualTolerance = 1e-10;
constexpr int kMaxPasses = 20000;

struct LabeledPoint {
    std::string term;
    std::vector<double> x; // raw features, subset order
    int y = 0;             // +1 informative, -1 non-informative
};

// L1-loss dual coordinate descent with the bias folded in as a constant
// feature. Cyclic order, so the result is deterministic.
void train_hinge(const std::vector<std::vector<double>> &x,
                 const std::vector<int> &y, double box_c,
                 std::vector<double> &w_out, double &b_out) {
    size_t n = x.size();
    size_t dim = x.empty() ? 0 : x[0].size() + 1; // +1 for bias column
    std::vector<double> w(dim, 0.0);
    std::vector<double> alpha(n, 0.0);
    std::vector<double> qii(n, 0.0);
    for (size_t i = 0; i < n; ++i) {
        double q = 1.0; // bias column
        for (double v : x[i]) q += v * v;
        qii[i] = q;
    }
    auto dot_w = [&](size_t i) {
        double d = w[dim - 1]; // bias * 1
        for (size_t j = 0; j + 1 < dim; ++j) d += w[j] * x[i][j];
        return d;
    };
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        double max_violation = 0.0;
        for (size_t i = 0; i < n; ++i) {
            double grad = y[i] * dot_w(i) - 1.0;
            double projected = grad;
            if (alpha[i] <= 0.0)
                projected = std::min(grad, 0.0);
            else if (alpha[i] >= box_c)
                projected = std::max(grad, 0.0);
            max_violation = std::max(max_violation, std::fabs(projected));
            if (projected != 0.0) {
                double old = alpha[i];
                alpha[i] = std::min(std::max(old - grad / qii[i], 0.0), box_c);
                double delta = (alpha[i] - old) * y[i];
                for (size_t j = 0; j + 1 < dim; ++j) w[j] += delta * x[i][j];
                w[dim - 1] += delta;
            }
        }
        if (max_violation < kDualTolerance) break;
    }
    w_out.assign(w.begin(), w.end() - 1);
    b_out = w[dim - 1];
}

struct Standardization {
    std::vector<double> mean, stddev;
};

Standardization standardize_fit(const std::vector<LabeledPoint> &points,
                                size_t dim) {
    Standardization s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    for (const auto &p : points)
        for (size_t j = 0; j < dim; ++j) s.mean[j] += p.x[j];
    for (size_t j = 0; j < dim; ++j) s.mean[j] /= static_cast<double>(points.size());
    for (const auto &p : points)
        for (size_t j = 0; j < dim; ++j) {
            double d = p.x[j] - s.mean[j];
            s.stddev[j] += d * d;
        }
    for (size_t j = 0; j < dim; ++j) {
        s.stddev[j] = std::sqrt(s.stddev[j] / static_cast<double>(points.size()));
        if (s.stddev[j] < 1e-12) s.stddev[j] = 1.0; // constant feature, inert
    }
    return s;
}

std::vector<std::vector<double>>
standardize_apply(const Standardization &s, const std::vector<LabeledPoint> &points) {
    std::vector<std::vector<double>> out;
    out.reserve(points.size());
    for (const auto &p : points) {
        std::vector<double> row(p.x.size());
        for (size_t j = 0; j < p.x.size(); ++j)
            row[j] = (p.x[j] - s.mean[j]) / s.stddev[j];
        out.push_back(std::move(row));
    }
    return out;
}

// Train on `train`, count correct predictions on `test`.
size_t fold_correct(const std::vector<LabeledPoint> &train,
                    const std::vector<LabeledPoint> &test, double lambda) {
    size_t dim = train[0].x.size();
    Standardization s = standardize_fit(train, dim);
    std::vector<std::vector<double>> xs = standardize_apply(s, train);
    std::vector<int> ys;
    ys.reserve(train.size());
    for (const auto &p : train) ys.push_back(p.y);
    std::vector<double> w;
    double b = 0.0;
    double box_c = 1.0 / (lambda * static_cast<double>(train.size()));
    train_hinge(xs, ys, box_c, w, b);
    size_t correct = 0;
    for (const auto &p : test) {
        double d = b;
        for (size_t j = 0; j < dim; ++j)
            d += w[j] * (p.x[j] - s.mean[j]) / s.stddev[j];
        int predicted = d > 0.0 ? 1 : -1; // boundary -> non-informative
        if (predicted == p.y) ++correct;
    }
    return correct;
}

double cross_validate(const std::vector<LabeledPoint> &points, int folds,
                      double lambda) {
    // Points arrive sorted by term; assign round-robin.
    std::vector<std::vector<LabeledPoint>> fold_sets(folds);
    for (size_t i = 0; i < points.size(); ++i)
        fold_sets[i % folds].push_back(points[i]);
    double acc_sum = 0.0;
    int evaluated = 0;
    for (int f = 0; f < folds; ++f) {
        if (fold_sets[f].empty()) continue;
        std::vector<LabeledPoint> train;
        for (int g = 0; g < folds; ++g)
            if (g != f)
                train.insert(train.end(), fold_sets[g].begin(), fold_sets[g].end());
        if (train.empty()) continue;
        size_t correct = fold_correct(train, fold_sets[f], lambda);
        acc_sum += static_cast<double>(correct) /
                   static_cast<double>(fold_sets[f].size());
        ++evaluated;
    }
    if (evaluated == 0)
        throw_error(ErrorKind::Invalid, "no evaluable folds");
    return acc_sum / evaluated;
}

std::vector<LabeledPoint> gather_points(const SeedTerms &seeds,
                                        const InvertedIndex &index,
                                        const std::vector<std::string> &subset,
                                        std::vector<std::string> &absent) {
    std::vector<LabeledPoint> points;
    auto add = [&](const std::string &term, int label) {
        TermStats stats = index.term_stats(term);
        if (stats.df == 0) {
            absent.push_back(term);
            return;
        }
        LabeledPoint p;
        p.term = term;
        p.y = label;
        for (const auto &name : subset)
            p.x.push_back(compute_feature(name, stats, index.collection()));
        points.push_back(std::move(p));
    };
    for (const auto &t : seeds.informative) add(t, +1);
    for (const auto &t : seeds.non_informative) add(t, -1);
    std::sort(points.begin(), points.end(),
              [](const LabeledPoint &a, const LabeledPoint &b) { return a.term < b.term; });
    std::sort(absent.begin(), absent.end());
    return points;
}

} // namespace

SeedTerms SeedTerms::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open seed terms file: " + path);
    SeedTerms seeds;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        std::string term, label;
        if (!(fields >> term >> label))
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": expected `<term> <label>`");
        if (label == "info")
            seeds.informative.push_back(term);
        else if (label == "noninfo")
            seeds.non_informative.push_back(term);
        else
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": label must be info or noninfo, got " + label);
    }
    return seeds;
}

double TermClassifier::decision_value(const std::vector<double> &raw) const {
    if (raw.size() != weights.size())
        throw_error(ErrorKind::Invalid, "feature count mismatch");
    double d = bias;
    for (size_t j = 0; j < weights.size(); ++j)
        d += weights[j] * (raw[j] - mean[j]) / stddev[j];
    return d;
}

bool TermClassifier::is_informative(const TermStats &stats,
                                    const CollectionStats &coll) const {
    std::vector<double> raw;
    raw.reserve(features.size());
    for (const auto &name : features)
        raw.push_back(compute_feature(name, stats, coll));
    return decision_value(raw) > 0.0;
}

TrainResult train_classifier(const SeedTerms &seeds, const InvertedIndex &index,
                             const std::vector<std::string> &feature_subset,
                             int folds) {
    if (folds < 2)
        throw_error(ErrorKind::Invalid, "cross-validation needs folds >= 2");
    if (feature_subset.empty())
        throw_error(ErrorKind::Invalid, "empty feature subset");
    std::vector<std::string> subset = feature_subset;
    std::sort(subset.begin(), subset.end());

    TrainResult result;
    std::vector<LabeledPoint> points =
        gather_points(seeds, index, subset, result.absent_terms);

    size_t pos = 0, neg = 0;
    for (const auto &p : points) (p.y > 0 ? pos : neg) += 1;
    if (pos < 2 || neg < 2)
        throw_error(ErrorKind::Invalid,
                    "need at least 2 seed terms of each class present in the index");

    double best_acc = -1.0, best_lambda = 0.0;
    for (double lambda : kLambdaGrid) {
        double acc = cross_validate(points, folds, lambda);
        if (acc > best_acc) { // strict: ties keep the smaller lambda
            best_acc = acc;
            best_lambda = lambda;
        }
    }

    size_t dim = subset.size();
    Standardization s = standardize_fit(points, dim);
    std::vector<std::vector<double>> xs = standardize_apply(s, points);
    std::vector<int> ys;
    ys.reserve(points.size());
    for (const auto &p : points) ys.push_back(p.y);
    std::vector<double> w;
    double b = 0.0;
    train_hinge(xs, ys, 1.0 / (best_lambda * static_cast<double>(points.size())),
                w, b);

    result.classifier.features = subset;
    result.classifier.weights = std::move(w);
    result.classifier.bias = b;
    result.classifier.mean = std::move(s.mean);
    result.classifier.stddev = std::move(s.stddev);
    result.cv_accuracy = best_acc;
    result.lambda = best_lambda;
    return result;
}

SubsetSearchResult select_feature_subset(const SeedTerms &seeds,
                                         const InvertedIndex &index, int folds) {
    const std::vector<std::string> &names = feature_names();
    std::vector<std::vector<std::string>> subsets;
    for (unsigned mask = 1; mask < (1u << names.size()); ++mask) {
        std::vector<std::string> subset;
        for (size_t j = 0; j < names.size(); ++j)
            if (mask & (1u << j)) subset.push_back(names[j]);
        subsets.push_back(std::move(subset));
    }
    // ties resolve toward smaller subsets, then lexicographic order
    std::sort(subsets.begin(), subsets.end(),
              [](const auto &a, const auto &b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return a < b;
              });

    SubsetSearchResult result;
    bool have_best = false;
    for (const auto &subset : subsets) {
        TrainResult trained = train_classifier(seeds, index, subset, folds);
        result.evaluated.push_back({subset, trained.cv_accuracy});
        if (!have_best || trained.cv_accuracy > result.best.cv_accuracy) {
            result.best = std::move(trained);
            have_best = true;
        }
    }
    return result;
}

std::vector<std::pair<std::string, bool>>
classify_vocabulary(const InvertedIndex &index, const TermClassifier &classifier) {
    if (index.vocab_size() == 0)
        throw_error(ErrorKind::Empty, "cannot classify an empty vocabulary");
    std::vector<std::pair<std::string, bool>> out;
    out.reserve(index.vocab_size());
    for (const auto &[term, entry] : index.vocabulary()) {
        TermStats stats{entry.cf, entry.df()};
        out.emplace_back(term, classifier.is_informative(stats, index.collection()));
    }
    return out;
}

FrequencySample extract_noninformative_sample(const InvertedIndex &index,
                                              const TermClassifier &classifier) {
    std::vector<uint64_t> values;
    for (const auto &[term, informative] : classify_vocabulary(index, classifier)) {
        if (!informative)
            values.push_back(index.find_term(term)->cf);
    }
    if (values.empty())
        throw_error(ErrorKind::Empty,
                    "classifier labeled every term informative; nothing to fit");
    return FrequencySample::from_values(values);
}

} // namespace adr
