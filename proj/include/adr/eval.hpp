#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "adr/index.hpp"
#include "adr/io.hpp"
#include "adr/ranking.hpp"

namespace adr {

// TREC relevance judgments. Grades are nonnegative; a missing pair means
// unjudged, which is distinct from a judged 0.
class Qrels {
public:
    using Judgments = std::map<std::string, int>; // doc_id -> grade

    static Qrels parse(const std::string &path,
                       std::vector<std::string> *warnings = nullptr);

    const std::map<std::string, Judgments> &queries() const { return queries_; }
    const Judgments *find(const std::string &query_id) const;
    int max_grade() const { return max_grade_; } // across the whole file
    bool empty() const { return queries_.empty(); }

    void add(const std::string &query_id, const std::string &doc_id, int grade);

private:
    std::map<std::string, Judgments> queries_;
    int max_grade_ = 0;
};

enum class Metric { Bpref, Err20, Ndcg, Ndcg10, P10 };

const std::string &metric_name(Metric m);
Metric metric_from_name(const std::string &name);
const std::vector<Metric> &all_metrics();

// Rankings are doc-id lists in rank order. All metrics live in [0, 1].
double precision_at_k(const std::vector<std::string> &ranking,
                      const Qrels::Judgments &judgments, size_t k = 10);
double bpref(const std::vector<std::string> &ranking,
             const Qrels::Judgments &judgments);
double err_at_k(const std::vector<std::string> &ranking,
                const Qrels::Judgments &judgments, size_t k, int g_max);
double ndcg_at_k(const std::vector<std::string> &ranking,
                 const Qrels::Judgments &judgments, size_t k);

// nullopt when the query is excluded (no relevant document judged).
std::optional<double> metric_value(Metric m,
                                   const std::vector<std::string> &ranking,
                                   const Qrels::Judgments &judgments,
                                   int g_max);

struct MetricReport {
    // metric -> qid -> value, plus macro means over evaluated queries
    std::map<std::string, std::map<std::string, double>> per_query;
    std::map<std::string, double> means;
    std::vector<std::string> excluded; // qids with no relevant judgment

    std::string to_text() const;
};

MetricReport evaluate_run(const Run &run, const Qrels &qrels);

struct TuneResult {
    std::string param_name; // "c" or "mu"
    Metric objective = Metric::Ndcg;
    std::vector<double> fold_choice;
    std::vector<double> fold_test_metric;
    double mean_test_metric = 0.0;

    std::string to_text() const;
};

// 3-fold (by default) cross-validated grid tuning of c (DFR models) or
// mu (LMDir). Queries are sorted by id and dealt round-robin to folds;
// grid ties resolve to the smaller value.
TuneResult tune(const std::vector<Query> &queries, const Qrels &qrels,
                const InvertedIndex &index, const RankingConfig &base,
                const std::vector<double> &grid, int folds, Metric objective,
                size_t depth = 1000);

struct DiffReport {
    Metric metric = Metric::Ndcg;
    std::vector<std::pair<std::string, double>> deltas; // sorted descending
    size_t positive = 0, negative = 0, zero = 0;
    double t_statistic = 0.0;
    double p_value = 1.0;
    double alpha = 0.05;
    bool significant = false;

    std::string to_text() const;
};

// Per-query metric(A) - metric(B) plus a paired two-sided t-test.
DiffReport per_query_diff(const Run &run_a, const Run &run_b,
                          const Qrels &qrels, Metric metric,
                          double alpha = 0.05);

} // namespace adr
