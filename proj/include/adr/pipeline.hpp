#pragma once

#include <string>
#include <vector>

#include "adr/classifier.hpp"
#include "adr/eval.hpp"
#include "adr/index.hpp"
#include "adr/ranking.hpp"

namespace adr::pipeline {

// Each stage reads and writes file artifacts so that commands stay
// independent processes. Missing upstream artifacts raise Io errors that
// name the producing command. Every writer is deterministic: rerunning a
// stage on unchanged inputs gives byte-identical output.

InvertedIndex index_stage(const std::string &corpus_path,
                          const std::string &index_out);

void classify_stage(const InvertedIndex &index, const std::string &seeds_path,
                    int folds, const std::string &classmap_out,
                    const std::string &report_out);

void fit_stage(const InvertedIndex &index, const std::string &classmap_path,
               const std::string &sample_out, const std::string &fits_out);

void select_stage(const std::string &fits_path, const std::string &sample_path,
                  const std::string &report_out);

struct SearchOptions {
    RankingConfig config;
    bool model_explicit = false;  // --model was given
    std::string selection_path;   // model-selection report, may be empty
    bool force_model = false;
    size_t k = 1000;
    std::string tag;              // run tag; defaults to model-induction
};

void search_stage(const InvertedIndex &index, const std::string &topics_path,
                  const SearchOptions &options, const std::string &run_out);

void evaluate_stage(const std::string &run_path, const std::string &qrels_path,
                    const std::string &out_path);

void tune_stage(const InvertedIndex &index, const std::string &topics_path,
                const std::string &qrels_path, const RankingConfig &base,
                const std::vector<double> &grid, int folds, Metric objective,
                const std::string &out_path);

void fitplot_stage(const std::string &sample_path, const std::string &fits_path,
                   const std::string &out_path);

void diff_stage(const std::string &run_a_path, const std::string &run_b_path,
                const std::string &qrels_path, Metric metric, double alpha,
                const std::string &out_path);

} // namespace adr::pipeline
