#include "adr.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "adr/error.hpp"
#include "adr/eval.hpp"
#include "adr/index.hpp"
#include "adr/io.hpp"
#include "adr/pipeline.hpp"
#include "adr/ranking.hpp"

struct adr_index {
    adr::InvertedIndex impl;
};

struct adr_hits {
    std::vector<adr::ScoredDoc> impl;
};

namespace {

thread_local std::string g_last_error;

adr_status status_of(adr::ErrorKind kind) {
    switch (kind) {
    case adr::ErrorKind::Io: return ADR_E_IO;
    case adr::ErrorKind::Format: return ADR_E_FORMAT;
    case adr::ErrorKind::Invalid: return ADR_E_INVALID;
    case adr::ErrorKind::Domain: return ADR_E_DOMAIN;
    case adr::ErrorKind::Empty: return ADR_E_EMPTY;
    case adr::ErrorKind::Internal: return ADR_E_INTERNAL;
    }
    return ADR_E_INTERNAL;
}

template <typename F> adr_status guarded(F &&body) {
    try {
        body();
        g_last_error.clear();
        return ADR_OK;
    } catch (const adr::Error &e) {
        g_last_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception &e) {
        g_last_error = e.what();
        return ADR_E_INTERNAL;
    }
}

adr_status invalid_argument(const char *message) {
    g_last_error = message;
    return ADR_E_INVALID;
}

adr::RankingConfig config_of(const adr_config *config) {
    adr::RankingConfig out;
    if (config == nullptr) return out;
    if (config->model != nullptr)
        out.model = adr::model_from_name(config->model);
    if (config->after_effect != nullptr)
        out.after_effect = adr::after_effect_from_name(config->after_effect);
    if (config->induction != nullptr)
        out.induction = adr::induction_from_name(config->induction);
    if (config->c != 0.0) out.c = config->c;
    if (config->mu != 0.0) out.mu = config->mu;
    out.laplace_raw_tf = config->laplace_raw_tf != 0;
    out.use_after_effect = config->no_after_effect == 0;
    out.ys_rho_plus_one = config->ys_rho_plus_one != 0;
    return out;
}

size_t depth_of(const adr_config *config) {
    if (config == nullptr || config->k <= 0) return 1000;
    return static_cast<size_t>(config->k);
}

} // namespace

extern "C" {

const char *adr_status_name(adr_status status) {
    switch (status) {
    case ADR_OK: return "ok";
    case ADR_E_IO: return "io";
    case ADR_E_FORMAT: return "format";
    case ADR_E_INVALID: return "invalid";
    case ADR_E_DOMAIN: return "domain";
    case ADR_E_EMPTY: return "empty";
    case ADR_E_INTERNAL: return "internal";
    }
    return "unknown";
}

const char *adr_last_error(void) { return g_last_error.c_str(); }

adr_status adr_index_build(const char *corpus_path, adr_index **out) {
    if (corpus_path == nullptr || out == nullptr)
        return invalid_argument("adr_index_build: null argument");
    return guarded([&] {
        auto handle = std::make_unique<adr_index>();
        std::vector<adr::Document> docs;
        adr::read_corpus(corpus_path, [&](adr::Document &&doc) {
            docs.push_back(std::move(doc));
        });
        handle->impl = adr::InvertedIndex::build(docs);
        *out = handle.release();
    });
}

adr_status adr_index_save(const adr_index *index, const char *path) {
    if (index == nullptr || path == nullptr)
        return invalid_argument("adr_index_save: null argument");
    return guarded([&] { index->impl.save(path); });
}

adr_status adr_index_open(const char *path, adr_index **out) {
    if (path == nullptr || out == nullptr)
        return invalid_argument("adr_index_open: null argument");
    return guarded([&] {
        auto handle = std::make_unique<adr_index>();
        handle->impl = adr::InvertedIndex::load(path);
        *out = handle.release();
    });
}

void adr_index_close(adr_index *index) { delete index; }

uint64_t adr_index_num_docs(const adr_index *index) {
    return index == nullptr ? 0 : index->impl.num_docs();
}

uint64_t adr_index_total_tokens(const adr_index *index) {
    return index == nullptr ? 0 : index->impl.collection().total_tokens;
}

double adr_index_avg_doc_len(const adr_index *index) {
    return index == nullptr ? 0.0 : index->impl.collection().avg_len;
}

uint64_t adr_index_vocab_size(const adr_index *index) {
    return index == nullptr ? 0 : index->impl.vocab_size();
}

adr_status adr_index_term_stats(const adr_index *index, const char *term,
                                uint64_t *cf, uint64_t *df) {
    if (index == nullptr || term == nullptr)
        return invalid_argument("adr_index_term_stats: null argument");
    return guarded([&] {
        adr::TermStats stats = index->impl.term_stats(term);
        if (cf != nullptr) *cf = stats.cf;
        if (df != nullptr) *df = stats.df;
    });
}

adr_status adr_query(const adr_index *index, const char *query_text,
                     const adr_config *config, adr_hits **out) {
    if (index == nullptr || query_text == nullptr || out == nullptr)
        return invalid_argument("adr_query: null argument");
    return guarded([&] {
        adr::Query query = adr::Query::from_text("q", query_text);
        auto hits = std::make_unique<adr_hits>();
        hits->impl =
            adr::search(query, index->impl, config_of(config), depth_of(config));
        *out = hits.release();
    });
}

size_t adr_hits_count(const adr_hits *hits) {
    return hits == nullptr ? 0 : hits->impl.size();
}

const char *adr_hits_doc(const adr_hits *hits, size_t i) {
    if (hits == nullptr || i >= hits->impl.size()) return nullptr;
    return hits->impl[i].doc_id.c_str();
}

double adr_hits_score(const adr_hits *hits, size_t i) {
    if (hits == nullptr || i >= hits->impl.size()) return 0.0;
    return hits->impl[i].score;
}

void adr_hits_free(adr_hits *hits) { delete hits; }

adr_status adr_classify(const adr_index *index, const char *seeds_path,
                        int folds, const char *classmap_out,
                        const char *report_out) {
    if (index == nullptr || seeds_path == nullptr || classmap_out == nullptr ||
        report_out == nullptr)
        return invalid_argument("adr_classify: null argument");
    return guarded([&] {
        adr::pipeline::classify_stage(index->impl, seeds_path,
                                      folds <= 0 ? 10 : folds, classmap_out,
                                      report_out);
    });
}

adr_status adr_fit(const adr_index *index, const char *classmap_path,
                   const char *sample_out, const char *fits_out) {
    if (index == nullptr || classmap_path == nullptr || sample_out == nullptr ||
        fits_out == nullptr)
        return invalid_argument("adr_fit: null argument");
    return guarded([&] {
        adr::pipeline::fit_stage(index->impl, classmap_path, sample_out,
                                 fits_out);
    });
}

adr_status adr_select(const char *fits_path, const char *sample_path,
                      const char *report_out) {
    if (fits_path == nullptr || sample_path == nullptr || report_out == nullptr)
        return invalid_argument("adr_select: null argument");
    return guarded([&] {
        adr::pipeline::select_stage(fits_path, sample_path, report_out);
    });
}

adr_status adr_search_run(const adr_index *index, const char *topics_path,
                          const adr_config *config, int model_explicit,
                          const char *selection_path, int force_model,
                          const char *tag, const char *run_out) {
    if (index == nullptr || topics_path == nullptr || run_out == nullptr)
        return invalid_argument("adr_search_run: null argument");
    return guarded([&] {
        adr::pipeline::SearchOptions options;
        options.config = config_of(config);
        options.model_explicit = model_explicit != 0;
        if (selection_path != nullptr) options.selection_path = selection_path;
        options.force_model = force_model != 0;
        options.k = depth_of(config);
        if (tag != nullptr) options.tag = tag;
        adr::pipeline::search_stage(index->impl, topics_path, options, run_out);
    });
}

adr_status adr_evaluate(const char *run_path, const char *qrels_path,
                        const char *report_out) {
    if (run_path == nullptr || qrels_path == nullptr || report_out == nullptr)
        return invalid_argument("adr_evaluate: null argument");
    return guarded([&] {
        adr::pipeline::evaluate_stage(run_path, qrels_path, report_out);
    });
}

adr_status adr_tune(const adr_index *index, const char *topics_path,
                    const char *qrels_path, const adr_config *config,
                    const double *grid, size_t grid_len, int folds,
                    const char *objective, const char *result_out) {
    if (index == nullptr || topics_path == nullptr || qrels_path == nullptr ||
        grid == nullptr || grid_len == 0 || result_out == nullptr)
        return invalid_argument("adr_tune: null argument");
    return guarded([&] {
        std::vector<double> grid_values(grid, grid + grid_len);
        adr::Metric metric = objective == nullptr
            ? adr::Metric::Ndcg
            : adr::metric_from_name(objective);
        adr::pipeline::tune_stage(index->impl, topics_path, qrels_path,
                                  config_of(config), grid_values,
                                  folds <= 0 ? 3 : folds, metric, result_out);
    });
}

adr_status adr_fitplot(const char *sample_path, const char *fits_path,
                       const char *out_path) {
    if (sample_path == nullptr || fits_path == nullptr || out_path == nullptr)
        return invalid_argument("adr_fitplot: null argument");
    return guarded([&] {
        adr::pipeline::fitplot_stage(sample_path, fits_path, out_path);
    });
}

adr_status adr_diff(const char *run_a_path, const char *run_b_path,
                    const char *qrels_path, const char *metric, double alpha,
                    const char *out_path) {
    if (run_a_path == nullptr || run_b_path == nullptr || qrels_path == nullptr ||
        out_path == nullptr)
        return invalid_argument("adr_diff: null argument");
    return guarded([&] {
        adr::Metric m = metric == nullptr ? adr::Metric::Ndcg
                                          : adr::metric_from_name(metric);
        adr::pipeline::diff_stage(run_a_path, run_b_path, qrels_path, m,
                                  alpha <= 0.0 ? 0.05 : alpha, out_path);
    });
}

} // extern "C"
