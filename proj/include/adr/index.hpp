#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace adr {

struct Document {
    std::string id;
    std::string text;
};

struct Posting {
    uint32_t doc = 0; // internal document ordinal
    uint32_t tf = 0;  // occurrences of the term in that document
};

struct TermStats {
    uint64_t cf = 0; // collection frequency, total occurrences
    uint32_t df = 0; // document frequency, number of documents with the term
};

struct CollectionStats {
    uint64_t num_docs = 0;
    uint64_t total_tokens = 0;
    double avg_len = 0.0;
};

// Immutable after build; safe to share across threads for read-only scoring.
class InvertedIndex {
public:
    struct TermEntry {
        uint64_t cf = 0;
        std::vector<Posting> postings; // ordered by document ordinal
        uint32_t df() const { return static_cast<uint32_t>(postings.size()); }
    };

    static InvertedIndex build(const std::vector<Document> &docs);
    // Streaming build: `next` returns false when the stream is exhausted.
    static InvertedIndex build(const std::function<bool(Document &)> &next);

    void save(const std::string &path) const;
    static InvertedIndex load(const std::string &path);

    const CollectionStats &collection() const { return stats_; }
    uint64_t num_docs() const { return stats_.num_docs; }
    size_t vocab_size() const { return vocab_.size(); }

    const std::map<std::string, TermEntry> &vocabulary() const { return vocab_; }
    const TermEntry *find_term(std::string_view term) const;
    TermStats term_stats(std::string_view term) const; // zeros when absent

    const std::string &doc_id(uint32_t ordinal) const { return doc_ids_[ordinal]; }
    uint32_t doc_len(uint32_t ordinal) const { return doc_lens_[ordinal]; }
    bool has_doc(std::string_view id) const;
    uint32_t doc_ordinal(std::string_view id) const; // throws if unknown

    // Throws unless num_docs >= 1; every scoring path calls this.
    void require_scorable() const;

private:
    std::map<std::string, TermEntry> vocab_;
    std::vector<std::string> doc_ids_;
    std::vector<uint32_t> doc_lens_;
    std::unordered_map<std::string, uint32_t> doc_ordinals_;
    CollectionStats stats_;
};

} // namespace adr
