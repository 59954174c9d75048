#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "adr/index.hpp"

namespace adr {

struct ScoredDoc {
    std::string doc_id;
    double score = 0.0;
};

struct Topic {
    std::string query_id;
    std::string text;
};

// Line-delimited JSON corpus: one {"id": ..., "text": ...} object per line.
// Blank lines are skipped. Calls `sink` once per record.
void read_corpus(const std::string &path,
                 const std::function<void(Document &&)> &sink);

Document parse_corpus_line(const std::string &line, const std::string &path,
                           size_t line_no);

// Topic file: `qid<TAB>title text`, one per line.
std::vector<Topic> read_topics(const std::string &path);

// TREC 6-column run format: qid Q0 docid rank score tag.
using Run = std::map<std::string, std::vector<ScoredDoc>>; // qid -> ranking

void write_run_line(std::ostream &out, const std::string &qid,
                    const std::string &doc_id, size_t rank, double score,
                    const std::string &tag);
Run read_run(const std::string &path);

// Opens `path` for writing; "-" means stdout.
void write_text_file(const std::string &path, const std::string &content);

std::string read_text_file(const std::string &path);

} // namespace adr
