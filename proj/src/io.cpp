#include "adr/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "adr/error.hpp"

namespace adr {

Document parse_corpus_line(const std::string &line, const std::string &path,
                           size_t line_no) {
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() ||
        !record.contains("id") || !record.contains("text") ||
        !record["id"].is_string() || !record["text"].is_string())
        throw_error(ErrorKind::Format,
                    path + ":" + std::to_string(line_no) +
                        ": expected {\"id\": <string>, \"text\": <string>}");
    return {record["id"].get<std::string>(), record["text"].get<std::string>()};
}

void read_corpus(const std::string &path,
                 const std::function<void(Document &&)> &sink) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open corpus file: " + path);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        sink(parse_corpus_line(line, path, line_no));
    }
}

std::vector<Topic> read_topics(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open topics file: " + path);
    std::vector<Topic> topics;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": expected `qid<TAB>title text`");
        topics.push_back({line.substr(0, tab), line.substr(tab + 1)});
    }
    return topics;
}

void write_run_line(std::ostream &out, const std::string &qid,
                    const std::string &doc_id, size_t rank, double score,
                    const std::string &tag) {
    char score_buf[64];
    std::snprintf(score_buf, sizeof(score_buf), "%.6f", score);
    out << qid << " Q0 " << doc_id << ' ' << rank << ' ' << score_buf << ' '
        << tag << '\n';
}

Run read_run(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open run file: " + path);
    Run run;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string qid, q0, docid, rank_s, score_s, tag;
        if (!(fields >> qid >> q0 >> docid >> rank_s >> score_s >> tag))
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": expected 6-column run line");
        double score = 0.0;
        auto [p, ec] = std::from_chars(score_s.data(), score_s.data() + score_s.size(), score);
        if (ec != std::errc() || p != score_s.data() + score_s.size())
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) + ": bad score field");
        run[qid].push_back({docid, score});
    }
    return run;
}

void write_text_file(const std::string &path, const std::string &content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw_error(ErrorKind::Io, "cannot open file for writing: " + path);
    out << content;
    out.flush();
    if (!out)
        throw_error(ErrorKind::Io, "failed writing file: " + path);
}

std::string read_text_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace adr
