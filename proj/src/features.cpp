#include "adr/features.hpp"

#include <cmath>

#include "adr/error.hpp"

namespace adr {

namespace {

void require_present(const TermStats &stats, const CollectionStats &coll) {
    if (coll.num_docs == 0)
        throw_error(ErrorKind::Empty, "feature on empty collection");
    if (stats.df == 0)
        throw_error(ErrorKind::Invalid, "feature undefined for df = 0");
}

} // namespace

double idf(const TermStats &stats, const CollectionStats &coll) {
    require_present(stats, coll);
    double ratio = static_cast<double>(stats.df) / static_cast<double>(coll.num_docs);
    return -std::log2(ratio);
}

double ridf(const TermStats &stats, const CollectionStats &coll) {
    require_present(stats, coll);
    if (stats.cf == 0)
        throw_error(ErrorKind::Invalid, "ridf undefined for cf = 0");
    double n = static_cast<double>(coll.num_docs);
    double expected_miss = -std::expm1(-static_cast<double>(stats.cf) / n);
    return idf(stats, coll) + std::log2(expected_miss);
}

double gain(const TermStats &stats, const CollectionStats &coll) {
    require_present(stats, coll);
    double x = static_cast<double>(stats.df) / static_cast<double>(coll.num_docs);
    return x * (x - 1.0 - std::log(x));
}

const std::vector<std::string> &feature_names() {
    static const std::vector<std::string> names = {"gain", "idf", "ridf"};
    return names;
}

std::vector<double> compute_features(const TermStats &stats,
                                     const CollectionStats &coll) {
    return {gain(stats, coll), idf(stats, coll), ridf(stats, coll)};
}

double compute_feature(const std::string &name, const TermStats &stats,
                       const CollectionStats &coll) {
    if (name == "gain") return gain(stats, coll);
    if (name == "idf") return idf(stats, coll);
    if (name == "ridf") return ridf(stats, coll);
    throw_error(ErrorKind::Invalid, "unknown feature: " + name);
}

} // namespace adr
