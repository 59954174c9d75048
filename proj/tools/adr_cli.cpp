// Command-line front end. Links the C API only; everything substantive
// lives behind libadr.

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "adr.h"

namespace {

struct ConfigFlags {
    std::string model;
    std::string after_effect = "laplace";
    std::string induction = "tc";
    double c = 1.0;
    double mu = 1000.0;
    int k = 1000;
    bool laplace_raw_tf = false;
    bool no_after_effect = false;
    bool ys_rho_plus_one = false;
};

void add_config_flags(CLI::App *cmd, ConfigFlags &flags, bool model_required) {
    auto *model = cmd->add_option("--model", flags.model,
                                  "ranking model: pl2, inl2, lll2, spll2, ysl2, lmdir");
    model->check(CLI::IsMember({"pl2", "inl2", "lll2", "spll2", "ysl2", "lmdir"}));
    if (model_required) model->required();
    cmd->add_option("--after-effect", flags.after_effect, "laplace or bernoulli")
        ->check(CLI::IsMember({"laplace", "bernoulli"}));
    cmd->add_option("--induction", flags.induction,
                    "parameter induction: tc (cf/N) or dc (df/N)")
        ->check(CLI::IsMember({"tc", "dc"}));
    cmd->add_option("--c", flags.c, "tf normalization constant")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--mu", flags.mu, "LMDir smoothing parameter")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--k", flags.k, "result list depth")->check(CLI::PositiveNumber);
    cmd->add_flag("--laplace-raw-tf", flags.laplace_raw_tf,
                  "apply the Laplace after-effect to the raw term frequency");
    cmd->add_flag("--no-after-effect", flags.no_after_effect,
                  "drop the (1 - P2) factor");
    cmd->add_flag("--ys-rho-plus-one", flags.ys_rho_plus_one,
                  "use rho = induced parameter + 1 for ysl2");
}

adr_config config_of(const ConfigFlags &flags) {
    adr_config config = {};
    config.model = flags.model.empty() ? nullptr : flags.model.c_str();
    config.after_effect = flags.after_effect.c_str();
    config.induction = flags.induction.c_str();
    config.c = flags.c;
    config.mu = flags.mu;
    config.k = flags.k;
    config.laplace_raw_tf = flags.laplace_raw_tf ? 1 : 0;
    config.no_after_effect = flags.no_after_effect ? 1 : 0;
    config.ys_rho_plus_one = flags.ys_rho_plus_one ? 1 : 0;
    return config;
}

int fail(const char *command, adr_status status) {
    std::fprintf(stderr, "adr %s: %s (%s)\n", command, adr_last_error(),
                 adr_status_name(status));
    return 1;
}

// echo report lines whose key matches, e.g. the chosen winner
void print_matching_lines(const std::string &path, const std::string &prefix) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line))
        if (line.rfind(prefix, 0) == 0) std::printf("%s\n", line.c_str());
}

struct IndexHandle {
    adr_index *ptr = nullptr;
    ~IndexHandle() { adr_index_close(ptr); }
};

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"divergence-from-randomness retrieval engine with adaptive "
                 "distribution selection"};
    app.require_subcommand(1);
    app.fallthrough();
    unsigned long long seed = 42;
    app.add_option("--seed", seed,
                   "seed for randomized utilities (the pipeline itself is "
                   "deterministic)");

    // index
    std::string corpus_path, index_path;
    auto *cmd_index = app.add_subcommand("index", "build and persist an inverted index");
    cmd_index->add_option("corpus", corpus_path, "line-delimited JSON corpus")->required();
    cmd_index->add_option("index", index_path, "output index file")->required();

    // classify
    std::string cls_index, seeds_path, classmap_out, cls_report;
    int folds = 10;
    auto *cmd_classify =
        app.add_subcommand("classify", "train the term classifier and label the vocabulary");
    cmd_classify->add_option("index", cls_index)->required();
    cmd_classify->add_option("seeds", seeds_path, "seed terms, `<term> <label>` lines")->required();
    cmd_classify->add_option("classmap", classmap_out, "output term-class map")->required();
    cmd_classify->add_option("--report", cls_report, "classifier report path (default <classmap>.report)");
    cmd_classify->add_option("--folds", folds, "cross-validation folds")->check(CLI::Range(2, 1000));

    // fit
    std::string fit_index, fit_classmap, fits_out, sample_out;
    auto *cmd_fit = app.add_subcommand("fit", "fit candidate distributions to the non-informative sample");
    cmd_fit->add_option("index", fit_index)->required();
    cmd_fit->add_option("classmap", fit_classmap)->required();
    cmd_fit->add_option("fits", fits_out, "output fitted-model file")->required();
    cmd_fit->add_option("--sample-out", sample_out, "frequency sample path (default <fits>.sample)");

    // select
    std::string sel_fits, sel_sample, sel_out;
    auto *cmd_select = app.add_subcommand("select", "pick the best-fitting distribution family");
    cmd_select->add_option("fits", sel_fits)->required();
    cmd_select->add_option("sample", sel_sample)->required();
    cmd_select->add_option("report", sel_out, "output selection report")->required();

    // search
    std::string search_index, topics_path, run_out, selection_path, tag;
    bool force_model = false;
    ConfigFlags search_flags;
    auto *cmd_search = app.add_subcommand("search", "rank documents for a topics file, TREC run output");
    cmd_search->add_option("index", search_index)->required();
    cmd_search->add_option("topics", topics_path, "`qid<TAB>title` lines")->required();
    cmd_search->add_option("run", run_out, "output run file")->required();
    cmd_search->add_option("--selection", selection_path, "model-selection report");
    cmd_search->add_flag("--force-model", force_model, "allow ysl2 without a selection report");
    cmd_search->add_option("--tag", tag, "run tag (default <model>-<induction>)");
    add_config_flags(cmd_search, search_flags, false);

    // evaluate
    std::string eval_run, eval_qrels, eval_out = "-";
    auto *cmd_evaluate = app.add_subcommand("evaluate", "score a run against qrels");
    cmd_evaluate->add_option("run", eval_run)->required();
    cmd_evaluate->add_option("qrels", eval_qrels)->required();
    cmd_evaluate->add_option("--out", eval_out, "metric report path, - for stdout");

    // tune
    std::string tune_index, tune_topics, tune_qrels, tune_out = "-";
    std::string objective = "ndcg";
    std::vector<double> grid;
    int tune_folds = 3;
    ConfigFlags tune_flags;
    auto *cmd_tune = app.add_subcommand("tune", "cross-validated parameter tuning");
    cmd_tune->add_option("index", tune_index)->required();
    cmd_tune->add_option("topics", tune_topics)->required();
    cmd_tune->add_option("qrels", tune_qrels)->required();
    cmd_tune->add_option("--grid", grid,
                         "parameter grid (default: the standard c or mu grid)");
    cmd_tune->add_option("--folds", tune_folds)->check(CLI::Range(2, 100));
    cmd_tune->add_option("--objective", objective)
        ->check(CLI::IsMember({"ndcg", "p10", "err20", "ndcg10", "bpref"}));
    cmd_tune->add_option("--out", tune_out, "tune report path, - for stdout");
    add_config_flags(cmd_tune, tune_flags, true);

    // fitplot
    std::string plot_sample, plot_fits, plot_out;
    auto *cmd_fitplot = app.add_subcommand(
        "fitplot", "empirical frequency histogram with each fitted pmf, plot-ready columns");
    cmd_fitplot->add_option("sample", plot_sample)->required();
    cmd_fitplot->add_option("fits", plot_fits)->required();
    cmd_fitplot->add_option("out", plot_out)->required();

    // diff
    std::string diff_a, diff_b, diff_qrels, diff_out = "-";
    std::string diff_metric = "ndcg";
    double alpha = 0.05;
    auto *cmd_diff = app.add_subcommand("diff", "per-query metric differences between two runs");
    cmd_diff->add_option("runA", diff_a)->required();
    cmd_diff->add_option("runB", diff_b)->required();
    cmd_diff->add_option("qrels", diff_qrels)->required();
    cmd_diff->add_option("--metric", diff_metric)
        ->check(CLI::IsMember({"ndcg", "p10", "err20", "ndcg10", "bpref"}));
    cmd_diff->add_option("--alpha", alpha, "t-test significance level")
        ->check(CLI::PositiveNumber);
    cmd_diff->add_option("--out", diff_out, "diff report path, - for stdout");

    CLI11_PARSE(app, argc, argv);

    if (cmd_index->parsed()) {
        IndexHandle index;
        adr_status status = adr_index_build(corpus_path.c_str(), &index.ptr);
        if (status != ADR_OK) return fail("index", status);
        status = adr_index_save(index.ptr, index_path.c_str());
        if (status != ADR_OK) return fail("index", status);
        std::printf("indexed %llu documents, %llu tokens, %llu terms\n",
                    (unsigned long long)adr_index_num_docs(index.ptr),
                    (unsigned long long)adr_index_total_tokens(index.ptr),
                    (unsigned long long)adr_index_vocab_size(index.ptr));
        return 0;
    }

    if (cmd_classify->parsed()) {
        if (cls_report.empty()) cls_report = classmap_out + ".report";
        IndexHandle index;
        adr_status status = adr_index_open(cls_index.c_str(), &index.ptr);
        if (status != ADR_OK) return fail("classify", status);
        status = adr_classify(index.ptr, seeds_path.c_str(), folds,
                              classmap_out.c_str(), cls_report.c_str());
        if (status != ADR_OK) return fail("classify", status);
        print_matching_lines(cls_report, "features=");
        print_matching_lines(cls_report, "cv_accuracy=");
        return 0;
    }

    if (cmd_fit->parsed()) {
        if (sample_out.empty()) sample_out = fits_out + ".sample";
        IndexHandle index;
        adr_status status = adr_index_open(fit_index.c_str(), &index.ptr);
        if (status != ADR_OK) return fail("fit", status);
        status = adr_fit(index.ptr, fit_classmap.c_str(), sample_out.c_str(),
                         fits_out.c_str());
        if (status != ADR_OK) return fail("fit", status);
        return 0;
    }

    if (cmd_select->parsed()) {
        adr_status status =
            adr_select(sel_fits.c_str(), sel_sample.c_str(), sel_out.c_str());
        if (status != ADR_OK) return fail("select", status);
        print_matching_lines(sel_out, "winner=");
        return 0;
    }

    if (cmd_search->parsed()) {
        IndexHandle index;
        adr_status status = adr_index_open(search_index.c_str(), &index.ptr);
        if (status != ADR_OK) return fail("search", status);
        adr_config config = config_of(search_flags);
        status = adr_search_run(index.ptr, topics_path.c_str(), &config,
                                search_flags.model.empty() ? 0 : 1,
                                selection_path.empty() ? nullptr : selection_path.c_str(),
                                force_model ? 1 : 0,
                                tag.empty() ? nullptr : tag.c_str(),
                                run_out.c_str());
        if (status != ADR_OK) return fail("search", status);
        return 0;
    }

    if (cmd_evaluate->parsed()) {
        adr_status status = adr_evaluate(eval_run.c_str(), eval_qrels.c_str(),
                                         eval_out.c_str());
        if (status != ADR_OK) return fail("evaluate", status);
        return 0;
    }

    if (cmd_tune->parsed()) {
        if (grid.empty()) {
            if (tune_flags.model == "lmdir")
                grid = {100, 500, 800, 1000, 2000, 3000, 4000, 5000, 8000, 10000};
            else
                grid = {0.5, 1, 2, 4, 6, 8};
        }
        IndexHandle index;
        adr_status status = adr_index_open(tune_index.c_str(), &index.ptr);
        if (status != ADR_OK) return fail("tune", status);
        adr_config config = config_of(tune_flags);
        status = adr_tune(index.ptr, tune_topics.c_str(), tune_qrels.c_str(),
                          &config, grid.data(), grid.size(), tune_folds,
                          objective.c_str(), tune_out.c_str());
        if (status != ADR_OK) return fail("tune", status);
        return 0;
    }

    if (cmd_fitplot->parsed()) {
        adr_status status = adr_fitplot(plot_sample.c_str(), plot_fits.c_str(),
                                        plot_out.c_str());
        if (status != ADR_OK) return fail("fitplot", status);
        return 0;
    }

    if (cmd_diff->parsed()) {
        adr_status status =
            adr_diff(diff_a.c_str(), diff_b.c_str(), diff_qrels.c_str(),
                     diff_metric.c_str(), alpha, diff_out.c_str());
        if (status != ADR_OK) return fail("diff", status);
        return 0;
    }

    return 0;
}
