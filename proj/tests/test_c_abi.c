/* Plain C consumer of the shared library: builds an index, runs a query,
 * checks error reporting. Compiled as C, not C++. */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "adr.h"

static int checks = 0, failed = 0;

static void check(int condition, const char *what) {
    ++checks;
    if (!condition) {
        ++failed;
        fprintf(stderr, "FAIL: %s\n", what);
    }
}

int main(void) {
    const char *corpus_path = "/tmp/adr_c_abi_corpus.jsonl";
    FILE *corpus = fopen(corpus_path, "w");
    if (corpus == NULL) return 2;
    fputs("{\"id\": \"a\", \"text\": \"wind turbine wind\"}\n", corpus);
    fputs("{\"id\": \"b\", \"text\": \"solar panel array\"}\n", corpus);
    fputs("{\"id\": \"c\", \"text\": \"wind farm output\"}\n", corpus);
    fclose(corpus);

    adr_index *index = NULL;
    check(adr_index_build(corpus_path, &index) == ADR_OK, "index build");
    check(index != NULL, "index handle");
    check(adr_index_num_docs(index) == 3, "num docs");
    check(adr_index_total_tokens(index) == 9, "total tokens");

    uint64_t cf = 0, df = 0;
    check(adr_index_term_stats(index, "wind", &cf, &df) == ADR_OK, "term stats");
    check(cf == 3 && df == 2, "wind cf/df");

    adr_config config;
    memset(&config, 0, sizeof(config));
    config.model = "inl2";
    adr_hits *hits = NULL;
    check(adr_query(index, "wind", &config, &hits) == ADR_OK, "query");
    check(adr_hits_count(hits) == 2, "hit count");
    check(strcmp(adr_hits_doc(hits, 0), "a") == 0, "top hit");
    check(adr_hits_score(hits, 0) >= adr_hits_score(hits, 1), "ordering");
    adr_hits_free(hits);

    check(adr_index_open("/nonexistent.idx", &index) == ADR_E_IO, "io status");
    check(strlen(adr_last_error()) > 0, "error message");
    check(strcmp(adr_status_name(ADR_E_DOMAIN), "domain") == 0, "status name");

    adr_index_close(index);
    remove(corpus_path);

    if (failed == 0) printf("c abi ok (%d checks)\n", checks);
    return failed == 0 ? 0 : 1;
}
