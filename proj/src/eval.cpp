#include "adr/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "adr/error.hpp"
#include "adr/special_math.hpp"

namespace adr {

namespace {

std::string format_metric(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

bool has_relevant(const Qrels::Judgments &judgments) {
    for (const auto &[doc, grade] : judgments)
        if (grade > 0) return true;
    return false;
}

} // namespace

Qrels Qrels::parse(const std::string &path, std::vector<std::string> *warnings) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open qrels file: " + path);
    Qrels qrels;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string qid, iteration, docid, grade_s, extra;
        if (!(fields >> qid >> iteration >> docid >> grade_s) || (fields >> extra))
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": expected `qid 0 docid grade`");
        int grade = 0;
        try {
            grade = std::stoi(grade_s);
        } catch (const std::exception &) {
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": grade is not an integer: " + grade_s);
        }
        if (grade < 0) grade = 0;
        auto &per_query = qrels.queries_[qid];
        auto [it, inserted] = per_query.emplace(docid, grade);
        if (!inserted) {
            if (warnings != nullptr)
                warnings->push_back(path + ":" + std::to_string(line_no) +
                                    ": duplicate judgment for (" + qid + ", " +
                                    docid + "); last one wins");
            it->second = grade;
        }
        qrels.max_grade_ = std::max(qrels.max_grade_, grade);
    }
    return qrels;
}

const Qrels::Judgments *Qrels::find(const std::string &query_id) const {
    auto it = queries_.find(query_id);
    return it == queries_.end() ? nullptr : &it->second;
}

void Qrels::add(const std::string &query_id, const std::string &doc_id,
                int grade) {
    if (grade < 0) grade = 0;
    queries_[query_id][doc_id] = grade;
    max_grade_ = std::max(max_grade_, grade);
}

const std::string &metric_name(Metric m) {
    static const std::string names[] = {"bpref", "err20", "ndcg", "ndcg10",
                                        "p10"};
    return names[static_cast<int>(m)];
}

Metric metric_from_name(const std::string &name) {
    for (Metric m : all_metrics())
        if (metric_name(m) == name) return m;
    throw_error(ErrorKind::Invalid, "unknown metric: " + name);
}

const std::vector<Metric> &all_metrics() {
    static const std::vector<Metric> metrics = {
        Metric::Bpref, Metric::Err20, Metric::Ndcg, Metric::Ndcg10, Metric::P10};
    return metrics;
}

double precision_at_k(const std::vector<std::string> &ranking,
                      const Qrels::Judgments &judgments, size_t k) {
    if (k < 1)
        throw_error(ErrorKind::Invalid, "precision_at_k needs k >= 1");
    size_t relevant = 0;
    for (size_t i = 0; i < std::min(k, ranking.size()); ++i) {
        auto it = judgments.find(ranking[i]);
        if (it != judgments.end() && it->second > 0) ++relevant;
    }
    return static_cast<double>(relevant) / static_cast<double>(k);
}

double bpref(const std::vector<std::string> &ranking,
             const Qrels::Judgments &judgments) {
    size_t num_rel = 0, num_nonrel = 0;
    for (const auto &[doc, grade] : judgments)
        (grade > 0 ? num_rel : num_nonrel) += 1;
    if (num_rel == 0)
        throw_error(ErrorKind::Invalid, "bpref needs a judged relevant document");

    size_t rel_retrieved = 0;
    if (num_nonrel == 0) {
        for (const std::string &doc : ranking) {
            auto it = judgments.find(doc);
            if (it != judgments.end() && it->second > 0) ++rel_retrieved;
        }
        return static_cast<double>(rel_retrieved) / static_cast<double>(num_rel);
    }

    double bound = static_cast<double>(std::min(num_rel, num_nonrel));
    size_t nonrel_above = 0;
    double sum = 0.0;
    for (const std::string &doc : ranking) {
        auto it = judgments.find(doc);
        if (it == judgments.end()) continue; // unjudged documents are ignored
        if (it->second > 0) {
            double penalty = std::min(static_cast<double>(nonrel_above), bound);
            sum += 1.0 - penalty / bound;
        } else {
            ++nonrel_above;
        }
    }
    return sum / static_cast<double>(num_rel);
}

double err_at_k(const std::vector<std::string> &ranking,
                const Qrels::Judgments &judgments, size_t k, int g_max) {
    if (g_max < 1)
        throw_error(ErrorKind::Invalid, "err needs a positive maximum grade");
    double denom = std::pow(2.0, g_max);
    double p_continue = 1.0;
    double err = 0.0;
    for (size_t r = 0; r < std::min(k, ranking.size()); ++r) {
        auto it = judgments.find(ranking[r]);
        int grade = it == judgments.end() ? 0 : it->second;
        double stop = (std::pow(2.0, grade) - 1.0) / denom;
        err += p_continue * stop / static_cast<double>(r + 1);
        p_continue *= 1.0 - stop;
    }
    return err;
}

double ndcg_at_k(const std::vector<std::string> &ranking,
                 const Qrels::Judgments &judgments, size_t k) {
    if (ranking.empty() || k == 0) return 0.0;
    size_t depth = std::min(k, ranking.size());
    double dcg = 0.0;
    for (size_t r = 0; r < depth; ++r) {
        auto it = judgments.find(ranking[r]);
        int grade = it == judgments.end() ? 0 : it->second;
        if (grade > 0)
            dcg += (std::pow(2.0, grade) - 1.0) /
                   std::log2(static_cast<double>(r) + 2.0);
    }
    std::vector<int> ideal;
    for (const auto &[doc, grade] : judgments)
        if (grade > 0) ideal.push_back(grade);
    std::sort(ideal.rbegin(), ideal.rend());
    double idcg = 0.0;
    for (size_t r = 0; r < std::min(k, ideal.size()); ++r)
        idcg += (std::pow(2.0, ideal[r]) - 1.0) /
                std::log2(static_cast<double>(r) + 2.0);
    if (idcg == 0.0)
        throw_error(ErrorKind::Invalid, "ndcg needs a positive grade");
    return dcg / idcg;
}

std::optional<double> metric_value(Metric m,
                                   const std::vector<std::string> &ranking,
                                   const Qrels::Judgments &judgments,
                                   int g_max) {
    if (!has_relevant(judgments)) return std::nullopt;
    switch (m) {
    case Metric::Bpref: return bpref(ranking, judgments);
    case Metric::Err20: return err_at_k(ranking, judgments, 20, g_max);
    case Metric::Ndcg:
        return ranking.empty() ? 0.0 : ndcg_at_k(ranking, judgments, ranking.size());
    case Metric::Ndcg10: return ndcg_at_k(ranking, judgments, 10);
    case Metric::P10: return precision_at_k(ranking, judgments, 10);
    }
    throw_error(ErrorKind::Internal, "unknown metric");
}

MetricReport evaluate_run(const Run &run, const Qrels &qrels) {
    if (run.empty())
        throw_error(ErrorKind::Empty, "run has no queries");
    if (qrels.empty())
        throw_error(ErrorKind::Empty, "qrels file holds no judgments");

    MetricReport report;
    static const Qrels::Judgments kNoJudgments;
    for (const auto &[qid, ranking] : run) {
        const Qrels::Judgments *judgments = qrels.find(qid);
        if (judgments == nullptr) judgments = &kNoJudgments;
        std::vector<std::string> docs;
        docs.reserve(ranking.size());
        for (const ScoredDoc &hit : ranking) docs.push_back(hit.doc_id);
        if (!has_relevant(*judgments)) {
            report.excluded.push_back(qid);
            continue;
        }
        for (Metric m : all_metrics()) {
            auto value = metric_value(m, docs, *judgments, qrels.max_grade());
            if (value.has_value())
                report.per_query[metric_name(m)][qid] = *value;
        }
    }
    for (Metric m : all_metrics()) {
        const auto &values = report.per_query[metric_name(m)];
        if (values.empty()) continue;
        KahanSum sum;
        for (const auto &[qid, v] : values) sum.add(v);
        report.means[metric_name(m)] =
            sum.value() / static_cast<double>(values.size());
    }
    return report;
}

std::string MetricReport::to_text() const {
    std::ostringstream out;
    for (const auto &[metric, values] : per_query)
        for (const auto &[qid, value] : values)
            out << metric << ' ' << qid << ' ' << format_metric(value) << '\n';
    for (const auto &[metric, mean] : means)
        out << "mean " << metric << ' ' << format_metric(mean) << " over "
            << per_query.at(metric).size() << " queries\n";
    for (const std::string &qid : excluded)
        out << "excluded " << qid << " (no relevant documents judged)\n";
    return out.str();
}

TuneResult tune(const std::vector<Query> &queries, const Qrels &qrels,
                const InvertedIndex &index, const RankingConfig &base,
                const std::vector<double> &grid, int folds, Metric objective,
                size_t depth) {
    if (folds < 2)
        throw_error(ErrorKind::Invalid, "tune needs folds >= 2");
    if (grid.empty())
        throw_error(ErrorKind::Invalid, "tune needs a nonempty grid");
    if (queries.size() < static_cast<size_t>(folds))
        throw_error(ErrorKind::Invalid, "tune needs at least `folds` queries");

    std::vector<double> sorted_grid = grid;
    std::sort(sorted_grid.begin(), sorted_grid.end());
    sorted_grid.erase(std::unique(sorted_grid.begin(), sorted_grid.end()),
                      sorted_grid.end());

    std::vector<Query> sorted_queries = queries;
    std::sort(sorted_queries.begin(), sorted_queries.end(),
              [](const Query &a, const Query &b) { return a.id < b.id; });

    const bool tunes_mu = base.model == Model::LMDir;

    // metric per (grid value, query); nullopt = excluded query
    std::vector<std::vector<std::optional<double>>> cache(sorted_grid.size());
    for (size_t g = 0; g < sorted_grid.size(); ++g) {
        RankingConfig config = base;
        (tunes_mu ? config.mu : config.c) = sorted_grid[g];
        cache[g].reserve(sorted_queries.size());
        for (const Query &query : sorted_queries) {
            std::vector<ScoredDoc> hits = search(query, index, config, depth);
            std::vector<std::string> docs;
            docs.reserve(hits.size());
            for (const ScoredDoc &hit : hits) docs.push_back(hit.doc_id);
            const Qrels::Judgments *judgments = qrels.find(query.id);
            static const Qrels::Judgments kNone;
            cache[g].push_back(metric_value(objective, docs,
                                            judgments ? *judgments : kNone,
                                            qrels.max_grade()));
        }
    }

    TuneResult result;
    result.param_name = tunes_mu ? "mu" : "c";
    result.objective = objective;
    KahanSum mean_sum;
    int mean_count = 0;
    for (int fold = 0; fold < folds; ++fold) {
        double best_value = 0.0, best_mean = -1.0;
        for (size_t g = 0; g < sorted_grid.size(); ++g) {
            KahanSum sum;
            size_t count = 0;
            for (size_t qi = 0; qi < sorted_queries.size(); ++qi) {
                if (static_cast<int>(qi % folds) == fold) continue; // held out
                if (!cache[g][qi].has_value()) continue;
                sum.add(*cache[g][qi]);
                ++count;
            }
            if (count == 0) continue;
            double mean = sum.value() / static_cast<double>(count);
            if (mean > best_mean) { // strict: ties keep the smaller value
                best_mean = mean;
                best_value = sorted_grid[g];
            }
        }
        if (best_mean < 0.0)
            throw_error(ErrorKind::Invalid,
                        "objective undefined on every training query");
        size_t chosen = static_cast<size_t>(
            std::lower_bound(sorted_grid.begin(), sorted_grid.end(), best_value) -
            sorted_grid.begin());
        KahanSum test_sum;
        size_t test_count = 0;
        for (size_t qi = 0; qi < sorted_queries.size(); ++qi) {
            if (static_cast<int>(qi % folds) != fold) continue;
            if (!cache[chosen][qi].has_value()) continue;
            test_sum.add(*cache[chosen][qi]);
            ++test_count;
        }
        result.fold_choice.push_back(best_value);
        if (test_count > 0) {
            double test_mean = test_sum.value() / static_cast<double>(test_count);
            result.fold_test_metric.push_back(test_mean);
            mean_sum.add(test_mean);
            ++mean_count;
        } else {
            result.fold_test_metric.push_back(0.0);
        }
    }
    if (mean_count == 0)
        throw_error(ErrorKind::Invalid, "no fold had an evaluable test query");
    result.mean_test_metric = mean_sum.value() / mean_count;
    return result;
}

std::string TuneResult::to_text() const {
    std::ostringstream out;
    out << "objective " << metric_name(objective) << '\n';
    out << "param " << param_name << '\n';
    for (size_t f = 0; f < fold_choice.size(); ++f) {
        char value[32];
        std::snprintf(value, sizeof(value), "%g", fold_choice[f]);
        out << "fold " << f << " choice " << value << " test "
            << format_metric(fold_test_metric[f]) << '\n';
    }
    out << "mean " << format_metric(mean_test_metric) << '\n';
    return out.str();
}

DiffReport per_query_diff(const Run &run_a, const Run &run_b,
                          const Qrels &qrels, Metric metric, double alpha) {
    std::set<std::string> only_a, only_b;
    for (const auto &[qid, r] : run_a)
        if (run_b.find(qid) == run_b.end()) only_a.insert(qid);
    for (const auto &[qid, r] : run_b)
        if (run_a.find(qid) == run_a.end()) only_b.insert(qid);
    if (!only_a.empty() || !only_b.empty()) {
        std::string message = "runs cover different query sets:";
        for (const auto &qid : only_a) message += " " + qid + "(A only)";
        for (const auto &qid : only_b) message += " " + qid + "(B only)";
        throw_error(ErrorKind::Invalid, message);
    }

    DiffReport report;
    report.metric = metric;
    report.alpha = alpha;
    static const Qrels::Judgments kNone;
    for (const auto &[qid, ranking_a] : run_a) {
        const Qrels::Judgments *judgments = qrels.find(qid);
        if (judgments == nullptr) judgments = &kNone;
        auto docs_of = [](const std::vector<ScoredDoc> &hits) {
            std::vector<std::string> docs;
            docs.reserve(hits.size());
            for (const ScoredDoc &hit : hits) docs.push_back(hit.doc_id);
            return docs;
        };
        auto va = metric_value(metric, docs_of(ranking_a), *judgments,
                               qrels.max_grade());
        auto vb = metric_value(metric, docs_of(run_b.at(qid)), *judgments,
                               qrels.max_grade());
        if (!va.has_value() || !vb.has_value()) continue;
        double delta = *va - *vb;
        report.deltas.emplace_back(qid, delta);
        if (delta > 0.0)
            ++report.positive;
        else if (delta < 0.0)
            ++report.negative;
        else
            ++report.zero;
    }
    std::sort(report.deltas.begin(), report.deltas.end(),
              [](const auto &a, const auto &b) {
                  if (a.second != b.second) return a.second > b.second;
                  return a.first < b.first;
              });

    size_t n = report.deltas.size();
    if (n >= 2) {
        KahanSum sum;
        for (const auto &[qid, d] : report.deltas) sum.add(d);
        double mean = sum.value() / static_cast<double>(n);
        KahanSum sq;
        for (const auto &[qid, d] : report.deltas)
            sq.add((d - mean) * (d - mean));
        double sd = std::sqrt(sq.value() / static_cast<double>(n - 1));
        if (sd == 0.0) {
            report.t_statistic = mean == 0.0
                ? 0.0
                : std::numeric_limits<double>::infinity() * (mean > 0 ? 1 : -1);
            report.p_value = mean == 0.0 ? 1.0 : 0.0;
        } else {
            report.t_statistic = mean / (sd / std::sqrt(static_cast<double>(n)));
            report.p_value =
                student_t_two_sided_p(report.t_statistic, static_cast<double>(n - 1));
        }
        report.significant = report.p_value < alpha;
    }
    return report;
}

std::string DiffReport::to_text() const {
    std::ostringstream out;
    char buf[64];
    out << "# metric " << metric_name(metric) << ": " << positive
        << " positive, " << negative << " negative, " << zero << " zero over "
        << deltas.size() << " queries\n";
    std::snprintf(buf, sizeof(buf), "%.6f", t_statistic);
    out << "# paired t-test: t=" << buf;
    std::snprintf(buf, sizeof(buf), "%.6g", p_value);
    out << " p=" << buf << " alpha=" << alpha
        << (significant ? " (significant)" : " (not significant)") << '\n';
    for (const auto &[qid, delta] : deltas) {
        std::snprintf(buf, sizeof(buf), "%.6f", delta);
        out << qid << ' ' << buf << '\n';
    }
    return out.str();
}

} // namespace adr
