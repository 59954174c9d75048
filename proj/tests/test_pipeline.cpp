#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "adr/error.hpp"
#include "adr/classifier.hpp"
#include "adr/io.hpp"
#include "adr/model_select.hpp"
#include "adr/pipeline.hpp"
#include "support/synth.hpp"

using namespace adr;
namespace fs = std::filesystem;

namespace {

struct StageDir {
    fs::path root;
    StageDir() {
        root = fs::temp_directory_path() /
               ("adr_pipeline_" + std::to_string(::getpid()));
        fs::create_directories(root);
    }
    ~StageDir() { fs::remove_all(root); }
    std::string operator/(const std::string &name) const {
        return (root / name).string();
    }
};

synth::PipelineFixture fixture() {
    SeedTerms seeds = SeedTerms::load(ADR_SEEDS_PATH);
    return synth::pipeline_fixture(seeds, 1.7, 4242);
}

} // namespace

TEST_CASE("stage chain produces consistent artifacts") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    std::ofstream(dir / "topics.txt") << fx.topics;
    std::ofstream(dir / "qrels.txt") << fx.qrels;

    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");
    CHECK(index.num_docs() == 100);

    pipeline::classify_stage(index, ADR_SEEDS_PATH, 10, dir / "classmap.txt",
                             dir / "classifier.txt");
    std::string classmap = read_text_file(dir / "classmap.txt");
    CHECK(classmap.find(" info") != std::string::npos);
    CHECK(classmap.find(" noninfo") != std::string::npos);

    pipeline::fit_stage(index, dir / "classmap.txt", dir / "sample.txt",
                        dir / "fits.txt");
    std::vector<FittedModel> fits = load_fits(dir / "fits.txt");
    CHECK(fits.size() == 6); // five discrete candidates + log-logistic

    pipeline::select_stage(dir / "fits.txt", dir / "sample.txt",
                           dir / "selection.txt");
    ModelSelectionReport report =
        ModelSelectionReport::load(dir / "selection.txt");
    CHECK(report.fits.size() == 5);

    pipeline::SearchOptions options;
    options.selection_path = dir / "selection.txt";
    options.k = 20;
    pipeline::search_stage(index, dir / "topics.txt", options, dir / "run.txt");
    Run run = read_run(dir / "run.txt");
    CHECK(run.size() == 5);
    for (const auto &[qid, hits] : run) CHECK(hits.size() <= 20);

    pipeline::evaluate_stage(dir / "run.txt", dir / "qrels.txt",
                             dir / "metrics.txt");
    std::string metrics = read_text_file(dir / "metrics.txt");
    CHECK(metrics.find("mean ndcg") != std::string::npos);

    pipeline::fitplot_stage(dir / "sample.txt", dir / "fits.txt",
                            dir / "fitplot.txt");
    std::string plot = read_text_file(dir / "fitplot.txt");
    CHECK(plot.find("# x empirical") != std::string::npos);

    pipeline::diff_stage(dir / "run.txt", dir / "run.txt", dir / "qrels.txt",
                         Metric::Ndcg, 0.05, dir / "diff.txt");
    std::string diff = read_text_file(dir / "diff.txt");
    CHECK(diff.find("0 positive, 0 negative") != std::string::npos);
}

TEST_CASE("stages rerun byte-identically") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");

    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index1.bin");
    pipeline::index_stage(dir / "corpus.jsonl", dir / "index2.bin");
    CHECK(read_text_file(dir / "index1.bin") == read_text_file(dir / "index2.bin"));

    pipeline::classify_stage(index, ADR_SEEDS_PATH, 10, dir / "cm1.txt",
                             dir / "cr1.txt");
    pipeline::classify_stage(index, ADR_SEEDS_PATH, 10, dir / "cm2.txt",
                             dir / "cr2.txt");
    CHECK(read_text_file(dir / "cm1.txt") == read_text_file(dir / "cm2.txt"));
    CHECK(read_text_file(dir / "cr1.txt") == read_text_file(dir / "cr2.txt"));

    pipeline::fit_stage(index, dir / "cm1.txt", dir / "s1.txt", dir / "f1.txt");
    pipeline::fit_stage(index, dir / "cm1.txt", dir / "s2.txt", dir / "f2.txt");
    CHECK(read_text_file(dir / "f1.txt") == read_text_file(dir / "f2.txt"));
}

TEST_CASE("fitplot pmf columns each sum to at most one") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");
    pipeline::classify_stage(index, ADR_SEEDS_PATH, 10, dir / "cm.txt",
                             dir / "cr.txt");
    pipeline::fit_stage(index, dir / "cm.txt", dir / "sample.txt", dir / "fits.txt");
    pipeline::fitplot_stage(dir / "sample.txt", dir / "fits.txt", dir / "plot.txt");

    std::ifstream in(dir / "plot.txt");
    std::string header;
    std::getline(in, header);
    std::istringstream head(header);
    std::string hash, xcol, empirical;
    head >> hash >> xcol >> empirical;
    std::vector<std::string> families;
    std::string family;
    while (head >> family) families.push_back(family);
    REQUIRE(families.size() == 6);

    std::vector<double> sums(families.size(), 0.0);
    double empirical_sum = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        double x, emp;
        fields >> x >> emp;
        empirical_sum += emp;
        for (size_t i = 0; i < sums.size(); ++i) {
            double p;
            fields >> p;
            sums[i] += p;
        }
    }
    CHECK(empirical_sum == doctest::Approx(1.0).epsilon(1e-9));
    for (size_t i = 0; i < families.size(); ++i) {
        if (families[i] == "log_logistic") continue; // density, not a pmf
        CHECK(sums[i] <= 1.0 + 1e-9);
        CHECK(sums[i] > 0.0);
    }
}

TEST_CASE("evaluate stage reproduces hand-computed metrics from files") {
    StageDir dir;
    // ranking grades [1, 0, 2]: ndcg = 2.5 / (3 + 1/log2(3)) = 0.688529
    std::ofstream(dir / "run.txt") << "q1 Q0 a 1 3.000000 tag\n"
                                      "q1 Q0 b 2 2.000000 tag\n"
                                      "q1 Q0 c 3 1.000000 tag\n";
    std::ofstream(dir / "qrels.txt") << "q1 0 a 1\nq1 0 b 0\nq1 0 c 2\n";
    pipeline::evaluate_stage(dir / "run.txt", dir / "qrels.txt", dir / "out.txt");
    std::string report = read_text_file(dir / "out.txt");
    CHECK(report.find("ndcg q1 0.688529") != std::string::npos);
    CHECK(report.find("p10 q1 0.200000") != std::string::npos);
    CHECK(report.find("err20 q1") != std::string::npos);
}

TEST_CASE("fit stage sample equals direct extraction") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");
    SeedTerms seeds = SeedTerms::load(ADR_SEEDS_PATH);
    SubsetSearchResult trained = select_feature_subset(seeds, index, 10);

    pipeline::classify_stage(index, ADR_SEEDS_PATH, 10, dir / "classmap.txt",
                             dir / "report.txt");
    pipeline::fit_stage(index, dir / "classmap.txt", dir / "sample.txt",
                        dir / "fits.txt");
    FrequencySample from_files = FrequencySample::load(dir / "sample.txt");
    FrequencySample direct =
        extract_noninformative_sample(index, trained.best.classifier);
    CHECK(from_files.size() == direct.size());
    CHECK(from_files.histogram() == direct.histogram());
}

TEST_CASE("missing upstream artifacts name the producing command") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");

    try {
        pipeline::fit_stage(index, dir / "nope.txt", dir / "s.txt", dir / "f.txt");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find("adr classify") != std::string::npos);
    }
    try {
        pipeline::select_stage(dir / "nope.txt", dir / "nope2.txt", dir / "sel.txt");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find("adr fit") != std::string::npos);
    }
}

TEST_CASE("search model resolution rules") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    std::ofstream(dir / "topics.txt") << fx.topics;
    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");

    // explicit ysl2 without a selection report requires the override
    pipeline::SearchOptions ys;
    ys.model_explicit = true;
    ys.config.model = Model::YSL2;
    ys.k = 5;
    CHECK_THROWS_AS(
        pipeline::search_stage(index, dir / "topics.txt", ys, dir / "r1.txt"),
        Error);
    ys.force_model = true;
    pipeline::search_stage(index, dir / "topics.txt", ys, dir / "r1.txt");
    CHECK(!read_text_file(dir / "r1.txt").empty());

    // no model and no report: error mentioning `adr select`
    pipeline::SearchOptions none;
    none.k = 5;
    try {
        pipeline::search_stage(index, dir / "topics.txt", none, dir / "r2.txt");
        FAIL("expected an error");
    } catch (const Error &e) {
        CHECK(std::string(e.what()).find("select") != std::string::npos);
    }

    // baseline models run without any report
    pipeline::SearchOptions baseline;
    baseline.model_explicit = true;
    baseline.config.model = Model::PL2;
    baseline.k = 5;
    pipeline::search_stage(index, dir / "topics.txt", baseline, dir / "r3.txt");
    Run run = read_run(dir / "r3.txt");
    CHECK(run.size() == 5);
    for (const auto &[qid, hits] : run) {
        for (size_t i = 1; i < hits.size(); ++i)
            CHECK(hits[i - 1].score >= hits[i].score);
    }
}

TEST_CASE("run files carry the expected tag and rank fields") {
    StageDir dir;
    synth::PipelineFixture fx = fixture();
    synth::write_corpus_jsonl(fx.docs, dir / "corpus.jsonl");
    std::ofstream(dir / "topics.txt") << fx.topics;
    InvertedIndex index =
        pipeline::index_stage(dir / "corpus.jsonl", dir / "index.bin");
    pipeline::SearchOptions options;
    options.model_explicit = true;
    options.config.model = Model::InL2;
    options.config.induction = Induction::Dc;
    options.k = 3;
    pipeline::search_stage(index, dir / "topics.txt", options, dir / "run.txt");
    std::ifstream in(dir / "run.txt");
    std::string qid, q0, docid, rank, score, tag;
    size_t expected_rank = 1;
    std::string last_qid;
    while (in >> qid >> q0 >> docid >> rank >> score >> tag) {
        CHECK(q0 == "Q0");
        CHECK(tag == "inl2-dc");
        if (qid != last_qid) {
            expected_rank = 1;
            last_qid = qid;
        }
        CHECK(rank == std::to_string(expected_rank));
        ++expected_rank;
        CHECK(score.find('.') != std::string::npos);
    }
}
