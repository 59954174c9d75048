#include "adr/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "adr/distributions.hpp"
#include "adr/error.hpp"
#include "adr/io.hpp"
#include "adr/model_select.hpp"
#include "adr/sample.hpp"

namespace adr::pipeline {

namespace {

void require_artifact(const std::string &path, const std::string &producer) {
    std::ifstream probe(path);
    if (!probe)
        throw_error(ErrorKind::Io, "missing input " + path +
                                       " (produce it with `adr " + producer +
                                       "`)");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string join_names(const std::vector<std::string> &names) {
    std::string out;
    for (const auto &name : names) {
        if (!out.empty()) out += ',';
        out += name;
    }
    return out;
}

} // namespace

InvertedIndex index_stage(const std::string &corpus_path,
                          const std::string &index_out) {
    std::ifstream in(corpus_path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open corpus file: " + corpus_path);
    std::string line;
    size_t line_no = 0;
    InvertedIndex index = InvertedIndex::build([&](Document &doc) {
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            doc = parse_corpus_line(line, corpus_path, line_no);
            return true;
        }
        return false;
    });
    index.save(index_out);
    return index;
}

void classify_stage(const InvertedIndex &index, const std::string &seeds_path,
                    int folds, const std::string &classmap_out,
                    const std::string &report_out) {
    SeedTerms seeds = SeedTerms::load(seeds_path);
    SubsetSearchResult result = select_feature_subset(seeds, index, folds);

    std::ostringstream classmap;
    for (const auto &[term, informative] :
         classify_vocabulary(index, result.best.classifier))
        classmap << term << ' ' << (informative ? "info" : "noninfo") << '\n';
    write_text_file(classmap_out, classmap.str());

    std::ostringstream report;
    report << "features=" << join_names(result.best.classifier.features) << '\n';
    report << "cv_accuracy=" << format_double(result.best.cv_accuracy) << '\n';
    report << "lambda=" << format_double(result.best.lambda) << '\n';
    for (size_t j = 0; j < result.best.classifier.features.size(); ++j) {
        report << "weight " << result.best.classifier.features[j] << ' '
               << format_double(result.best.classifier.weights[j]) << " mean "
               << format_double(result.best.classifier.mean[j]) << " stddev "
               << format_double(result.best.classifier.stddev[j]) << '\n';
    }
    report << "bias=" << format_double(result.best.classifier.bias) << '\n';
    for (const auto &subset : result.evaluated)
        report << "subset " << join_names(subset.features) << ' '
               << format_double(subset.cv_accuracy) << '\n';
    for (const auto &term : result.best.absent_terms)
        report << "absent " << term << '\n';
    write_text_file(report_out, report.str());
}

void fit_stage(const InvertedIndex &index, const std::string &classmap_path,
               const std::string &sample_out, const std::string &fits_out) {
    require_artifact(classmap_path, "classify");
    std::ifstream in(classmap_path);
    std::vector<uint64_t> values;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string term, label;
        if (!(fields >> term >> label) || (label != "info" && label != "noninfo"))
            throw_error(ErrorKind::Format,
                        classmap_path + ":" + std::to_string(line_no) +
                            ": expected `<term> <label>`");
        if (label != "noninfo") continue;
        TermStats stats = index.term_stats(term);
        if (stats.cf == 0)
            throw_error(ErrorKind::Invalid,
                        "classmap term not present in this index: " + term);
        values.push_back(stats.cf);
    }
    if (values.empty())
        throw_error(ErrorKind::Empty,
                    "no non-informative terms in " + classmap_path);

    FrequencySample sample = FrequencySample::from_values(values);
    sample.save(sample_out);

    std::vector<FittedModel> fits;
    for (Family family :
         {Family::Geometric, Family::LogLogistic, Family::NegativeBinomial,
          Family::Poisson, Family::PowerLaw, Family::YuleSimon})
        fits.push_back(fit_mle(family, sample));
    save_fits(fits, fits_out);
}

void select_stage(const std::string &fits_path, const std::string &sample_path,
                  const std::string &report_out) {
    require_artifact(fits_path, "fit");
    require_artifact(sample_path, "fit");
    FrequencySample sample = FrequencySample::load(sample_path);
    std::vector<FittedModel> fits = load_fits(fits_path);
    std::vector<FittedModel> candidates;
    for (const FittedModel &fit : fits)
        if (is_discrete(fit.family)) candidates.push_back(fit);
    ModelSelectionReport report = select_best(candidates, sample);
    report.save(report_out);
}

namespace {

Model model_for_family(Family family) {
    switch (family) {
    case Family::YuleSimon: return Model::YSL2;
    case Family::Poisson: return Model::PL2;
    case Family::PowerLaw: return Model::SPLL2;
    default:
        throw_error(ErrorKind::Invalid,
                    "no ranking model implements the " + family_name(family) +
                        " family; pass --model explicitly");
    }
}

} // namespace

void search_stage(const InvertedIndex &index, const std::string &topics_path,
                  const SearchOptions &options, const std::string &run_out) {
    SearchOptions opts = options;
    if (!opts.model_explicit) {
        if (opts.selection_path.empty())
            throw_error(ErrorKind::Invalid,
                        "no --model given and no selection report; run `adr "
                        "select` or pass --model");
        require_artifact(opts.selection_path, "select");
        ModelSelectionReport report =
            ModelSelectionReport::load(opts.selection_path);
        opts.config.model = model_for_family(report.winner);
    } else if (opts.config.model == Model::YSL2 && !opts.force_model) {
        // the adaptive model is only meaningful once selection confirmed it
        if (opts.selection_path.empty())
            throw_error(ErrorKind::Invalid,
                        "ysl2 needs a selection report (run `adr select`) or "
                        "--force-model");
        require_artifact(opts.selection_path, "select");
        ModelSelectionReport report =
            ModelSelectionReport::load(opts.selection_path);
        if (report.winner != Family::YuleSimon)
            throw_error(ErrorKind::Invalid,
                        "selection report names " + family_name(report.winner) +
                            ", not yule_simon; use --force-model to override");
    }

    std::vector<Topic> topics = read_topics(topics_path);
    std::sort(topics.begin(), topics.end(),
              [](const Topic &a, const Topic &b) { return a.query_id < b.query_id; });
    std::string tag = opts.tag;
    if (tag.empty()) {
        tag = model_name(opts.config.model);
        if (opts.config.model != Model::LMDir)
            tag += "-" + induction_name(opts.config.induction);
    }

    std::ostringstream out;
    for (const Topic &topic : topics) {
        Query query = Query::from_text(topic.query_id, topic.text);
        std::vector<ScoredDoc> hits = search(query, index, opts.config, opts.k);
        for (size_t rank = 0; rank < hits.size(); ++rank)
            write_run_line(out, topic.query_id, hits[rank].doc_id, rank + 1,
                           hits[rank].score, tag);
    }
    write_text_file(run_out, out.str());
}

void evaluate_stage(const std::string &run_path, const std::string &qrels_path,
                    const std::string &out_path) {
    require_artifact(run_path, "search");
    std::ifstream probe(qrels_path);
    if (!probe)
        throw_error(ErrorKind::Io, "cannot open qrels file: " + qrels_path);
    probe.close();
    Run run = read_run(run_path);
    Qrels qrels = Qrels::parse(qrels_path);
    MetricReport report = evaluate_run(run, qrels);
    write_text_file(out_path, report.to_text());
}

void tune_stage(const InvertedIndex &index, const std::string &topics_path,
                const std::string &qrels_path, const RankingConfig &base,
                const std::vector<double> &grid, int folds, Metric objective,
                const std::string &out_path) {
    std::vector<Topic> topics = read_topics(topics_path);
    Qrels qrels = Qrels::parse(qrels_path);
    std::vector<Query> queries;
    queries.reserve(topics.size());
    for (const Topic &topic : topics)
        queries.push_back(Query::from_text(topic.query_id, topic.text));
    TuneResult result = tune(queries, qrels, index, base, grid, folds, objective);
    write_text_file(out_path, result.to_text());
}

void fitplot_stage(const std::string &sample_path, const std::string &fits_path,
                   const std::string &out_path) {
    require_artifact(sample_path, "fit");
    require_artifact(fits_path, "fit");
    FrequencySample sample = FrequencySample::load(sample_path);
    std::vector<FittedModel> fits = load_fits(fits_path);
    std::sort(fits.begin(), fits.end(),
              [](const FittedModel &a, const FittedModel &b) {
                  return family_name(a.family) < family_name(b.family);
              });

    std::ostringstream out;
    out << "# x empirical";
    for (const FittedModel &fit : fits) out << ' ' << family_name(fit.family);
    out << '\n';
    double n = static_cast<double>(sample.size());
    sample.for_each([&](uint64_t value, uint64_t count) {
        out << value << ' ' << format_double(count / n);
        for (const FittedModel &fit : fits)
            out << ' ' << format_double(pmf(fit.family, fit.params, value));
        out << '\n';
    });
    write_text_file(out_path, out.str());
}

void diff_stage(const std::string &run_a_path, const std::string &run_b_path,
                const std::string &qrels_path, Metric metric, double alpha,
                const std::string &out_path) {
    require_artifact(run_a_path, "search");
    require_artifact(run_b_path, "search");
    Run run_a = read_run(run_a_path);
    Run run_b = read_run(run_b_path);
    Qrels qrels = Qrels::parse(qrels_path);
    DiffReport report = per_query_diff(run_a, run_b, qrels, metric, alpha);
    write_text_file(out_path, report.to_text());
}

} // namespace adr::pipeline
