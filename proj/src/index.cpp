#include "adr/index.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>

#include "adr/error.hpp"
#include "adr/tokenizer.hpp"

namespace adr {

// Persisted layout (little-endian, version in the magic):
//   magic "ADRIDX1\0"
//   u64 num_docs, u64 total_tokens
//   num_docs x { u32 id_len, id bytes, u32 doc_len }   (insertion order)
//   u64 vocab_size
//   vocab_size x { u32 term_len, term bytes, u64 cf, u32 df,
//                  df x { u32 doc_ordinal, u32 tf } }  (term order)
namespace {

constexpr char kMagic[8] = {'A', 'D', 'R', 'I', 'D', 'X', '1', '\0'};

void write_u32(std::ostream &out, uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 4);
}

void write_u64(std::ostream &out, uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char *>(b), 8);
}

void write_str(std::ostream &out, const std::string &s) {
    write_u32(out, static_cast<uint32_t>(s.size()));
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

[[noreturn]] void truncated(const std::string &path) {
    throw_error(ErrorKind::Format, "index file is truncated or corrupt: " + path);
}

uint32_t read_u32(std::istream &in, const std::string &path) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char *>(b), 4)) truncated(path);
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

uint64_t read_u64(std::istream &in, const std::string &path) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char *>(b), 8)) truncated(path);
    uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::string read_str(std::istream &in, const std::string &path) {
    uint32_t len = read_u32(in, path);
    std::string s(len, '\0');
    if (len > 0 && !in.read(s.data(), len)) truncated(path);
    return s;
}

} // namespace

InvertedIndex InvertedIndex::build(const std::vector<Document> &docs) {
    size_t i = 0;
    return build([&](Document &out) {
        if (i >= docs.size()) return false;
        out = docs[i++];
        return true;
    });
}

InvertedIndex InvertedIndex::build(const std::function<bool(Document &)> &next) {
    InvertedIndex index;
    Document doc;
    while (next(doc)) {
        if (doc.id.empty())
            throw_error(ErrorKind::Invalid, "document with empty id");
        uint32_t ordinal = static_cast<uint32_t>(index.doc_ids_.size());
        auto [it, inserted] = index.doc_ordinals_.emplace(doc.id, ordinal);
        if (!inserted)
            throw_error(ErrorKind::Invalid, "duplicate document id: " + doc.id);

        std::vector<std::string> tokens = tokenize(doc.text);
        index.doc_ids_.push_back(doc.id);
        index.doc_lens_.push_back(static_cast<uint32_t>(tokens.size()));
        index.stats_.total_tokens += tokens.size();
        index.stats_.num_docs += 1;

        std::map<std::string, uint32_t> tf;
        for (auto &t : tokens) tf[std::move(t)] += 1;
        for (auto &[term, count] : tf) {
            TermEntry &entry = index.vocab_[term];
            entry.cf += count;
            entry.postings.push_back({ordinal, count});
        }
    }
    index.stats_.avg_len = index.stats_.num_docs == 0
        ? 0.0
        : static_cast<double>(index.stats_.total_tokens) /
          static_cast<double>(index.stats_.num_docs);
    return index;
}

const InvertedIndex::TermEntry *InvertedIndex::find_term(std::string_view term) const {
    auto it = vocab_.find(std::string(term));
    return it == vocab_.end() ? nullptr : &it->second;
}

TermStats InvertedIndex::term_stats(std::string_view term) const {
    const TermEntry *entry = find_term(term);
    if (entry == nullptr) return {};
    return {entry->cf, entry->df()};
}

bool InvertedIndex::has_doc(std::string_view id) const {
    return doc_ordinals_.find(std::string(id)) != doc_ordinals_.end();
}

uint32_t InvertedIndex::doc_ordinal(std::string_view id) const {
    auto it = doc_ordinals_.find(std::string(id));
    if (it == doc_ordinals_.end())
        throw_error(ErrorKind::Invalid, "unknown document id: " + std::string(id));
    return it->second;
}

void InvertedIndex::require_scorable() const {
    if (stats_.num_docs == 0)
        throw_error(ErrorKind::Empty, "cannot score against an empty index");
}

void InvertedIndex::save(const std::string &path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw_error(ErrorKind::Io, "cannot open index file for writing: " + path);
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, stats_.num_docs);
    write_u64(out, stats_.total_tokens);
    for (uint64_t i = 0; i < stats_.num_docs; ++i) {
        write_str(out, doc_ids_[i]);
        write_u32(out, doc_lens_[i]);
    }
    write_u64(out, vocab_.size());
    for (const auto &[term, entry] : vocab_) {
        write_str(out, term);
        write_u64(out, entry.cf);
        write_u32(out, entry.df());
        for (const Posting &p : entry.postings) {
            write_u32(out, p.doc);
            write_u32(out, p.tf);
        }
    }
    out.flush();
    if (!out)
        throw_error(ErrorKind::Io, "failed writing index file: " + path);
}

InvertedIndex InvertedIndex::load(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open index file: " + path);
    char magic[8];
    if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw_error(ErrorKind::Format,
                    "not an index file or unsupported version: " + path);

    InvertedIndex index;
    index.stats_.num_docs = read_u64(in, path);
    index.stats_.total_tokens = read_u64(in, path);
    // corrupt counts surface as truncation once reads run out
    size_t plausible = std::min<uint64_t>(index.stats_.num_docs, 1u << 20);
    index.doc_ids_.reserve(plausible);
    index.doc_lens_.reserve(plausible);
    for (uint64_t i = 0; i < index.stats_.num_docs; ++i) {
        std::string id = read_str(in, path);
        uint32_t len = read_u32(in, path);
        index.doc_ordinals_.emplace(id, static_cast<uint32_t>(i));
        index.doc_ids_.push_back(std::move(id));
        index.doc_lens_.push_back(len);
    }
    uint64_t vocab_size = read_u64(in, path);
    for (uint64_t i = 0; i < vocab_size; ++i) {
        std::string term = read_str(in, path);
        TermEntry entry;
        entry.cf = read_u64(in, path);
        uint32_t df = read_u32(in, path);
        entry.postings.reserve(df);
        for (uint32_t j = 0; j < df; ++j) {
            uint32_t doc = read_u32(in, path);
            uint32_t tf = read_u32(in, path);
            if (doc >= index.stats_.num_docs)
                throw_error(ErrorKind::Format,
                            "posting references unknown document: " + path);
            entry.postings.push_back({doc, tf});
        }
        index.vocab_.emplace_hint(index.vocab_.end(), std::move(term), std::move(entry));
    }
    index.stats_.avg_len = index.stats_.num_docs == 0
        ? 0.0
        : static_cast<double>(index.stats_.total_tokens) /
          static_cast<double>(index.stats_.num_docs);
    return index;
}

} // namespace adr
