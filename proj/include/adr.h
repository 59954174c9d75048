/*
 * C API of the adr retrieval engine. The library exposes the indexing,
 * term-classification, distribution-fitting, model-selection, ranking
 * and evaluation pipeline behind opaque handles and status codes. Every
 * function that can fail returns adr_status; the per-thread message from
 * adr_last_error() describes the most recent failure.
 */
#ifndef ADR_H
#define ADR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ADR_API __declspec(dllexport)
#else
#define ADR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adr_status {
    ADR_OK = 0,
    ADR_E_IO = 1,       /* file missing, unreadable, unwritable */
    ADR_E_FORMAT = 2,   /* corrupt or malformed artifact */
    ADR_E_INVALID = 3,  /* bad argument or violated precondition */
    ADR_E_DOMAIN = 4,   /* parameter outside a model's domain */
    ADR_E_EMPTY = 5,    /* operation needs data and got none */
    ADR_E_INTERNAL = 6
} adr_status;

ADR_API const char *adr_status_name(adr_status status);

/* Thread-local message for the last failing call on this thread. */
ADR_API const char *adr_last_error(void);

typedef struct adr_index adr_index;
typedef struct adr_hits adr_hits;

/* ---- corpus and index ------------------------------------------------ */

/* corpus: line-delimited JSON records {"id": ..., "text": ...} */
ADR_API adr_status adr_index_build(const char *corpus_path, adr_index **out);
ADR_API adr_status adr_index_save(const adr_index *index, const char *path);
ADR_API adr_status adr_index_open(const char *path, adr_index **out);
ADR_API void adr_index_close(adr_index *index);

ADR_API uint64_t adr_index_num_docs(const adr_index *index);
ADR_API uint64_t adr_index_total_tokens(const adr_index *index);
ADR_API double adr_index_avg_doc_len(const adr_index *index);
ADR_API uint64_t adr_index_vocab_size(const adr_index *index);
/* cf/df are zero when the term does not occur */
ADR_API adr_status adr_index_term_stats(const adr_index *index, const char *term,
                                        uint64_t *cf, uint64_t *df);

/* ---- ranking configuration ------------------------------------------- */

/* Zero-initialize, then set fields. NULL strings mean the default. */
typedef struct adr_config {
    const char *model;        /* pl2 inl2 lll2 spll2 ysl2 lmdir (default pl2) */
    const char *after_effect; /* laplace | bernoulli (default laplace) */
    const char *induction;    /* tc | dc (default tc) */
    double c;                 /* tf normalization constant (default 1.0) */
    double mu;                /* LMDir smoothing (default 1000) */
    int k;                    /* result depth (default 1000) */
    int laplace_raw_tf;       /* Laplace on raw tf instead of normalized */
    int no_after_effect;      /* drop the (1 - P2) factor */
    int ys_rho_plus_one;      /* YSL2 rho = induced parameter + 1 */
} adr_config;

/* ---- ad-hoc queries --------------------------------------------------- */

ADR_API adr_status adr_query(const adr_index *index, const char *query_text,
                             const adr_config *config, adr_hits **out);
ADR_API size_t adr_hits_count(const adr_hits *hits);
ADR_API const char *adr_hits_doc(const adr_hits *hits, size_t i);
ADR_API double adr_hits_score(const adr_hits *hits, size_t i);
ADR_API void adr_hits_free(adr_hits *hits);

/* ---- pipeline stages (file artifacts in, file artifacts out) ---------- */

/* seeds: `<term> <label>` lines, label in {info, noninfo} */
ADR_API adr_status adr_classify(const adr_index *index, const char *seeds_path,
                                int folds, const char *classmap_out,
                                const char *report_out);

ADR_API adr_status adr_fit(const adr_index *index, const char *classmap_path,
                           const char *sample_out, const char *fits_out);

ADR_API adr_status adr_select(const char *fits_path, const char *sample_path,
                              const char *report_out);

/* selection_path may be NULL; `tag` may be NULL for the default run tag.
 * Without an explicit model (config->model == NULL) the winner named in
 * the selection report decides. */
ADR_API adr_status adr_search_run(const adr_index *index,
                                  const char *topics_path,
                                  const adr_config *config, int model_explicit,
                                  const char *selection_path, int force_model,
                                  const char *tag, const char *run_out);

ADR_API adr_status adr_evaluate(const char *run_path, const char *qrels_path,
                                const char *report_out);

ADR_API adr_status adr_tune(const adr_index *index, const char *topics_path,
                            const char *qrels_path, const adr_config *config,
                            const double *grid, size_t grid_len, int folds,
                            const char *objective, const char *result_out);

ADR_API adr_status adr_fitplot(const char *sample_path, const char *fits_path,
                               const char *out_path);

ADR_API adr_status adr_diff(const char *run_a_path, const char *run_b_path,
                            const char *qrels_path, const char *metric,
                            double alpha, const char *out_path);

#ifdef __cplusplus
}
#endif

#endif /* ADR_H */
