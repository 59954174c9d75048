#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "adr/index.hpp"
#include "adr/io.hpp"

namespace adr {

// P1 choices. PL2 and InL2 are the classic divergence models, LLL2 and
// SPLL2 the information-model variants, YSL2 the Yule-Simon adaptive
// model. LMDir is the Dirichlet-smoothed query-likelihood baseline and
// ignores every DFR knob.
enum class Model { PL2, InL2, LLL2, SPLL2, YSL2, LMDir };
enum class AfterEffect { Laplace, Bernoulli };
enum class Induction { Tc, Dc }; // cf/N or df/N

const std::string &model_name(Model m);
Model model_from_name(const std::string &name);
const std::string &after_effect_name(AfterEffect a);
AfterEffect after_effect_from_name(const std::string &name);
const std::string &induction_name(Induction i);
Induction induction_from_name(const std::string &name);

struct RankingConfig {
    Model model = Model::PL2;
    AfterEffect after_effect = AfterEffect::Laplace;
    Induction induction = Induction::Tc;
    double c = 1.0;       // tf normalization constant
    double mu = 1000.0;   // LMDir smoothing
    bool laplace_raw_tf = false;  // Laplace on raw f_td instead of tfn
    bool use_after_effect = true; // drop (1 - P2) when false
    bool ys_rho_plus_one = false; // YSL2 rho = induced param + 1
};

struct Query {
    std::string id;
    std::map<std::string, uint32_t> terms; // term -> f_tq

    static Query from_text(std::string id, std::string_view text);
};

// f_td * log2(1 + c * avg_len / doc_len); zero when the term is absent.
double normalize_tf(double f_td, uint64_t doc_len, double avg_len, double c);

// cf/N (Tc) or df/N (Dc)
double induce_param(const TermStats &stats, const CollectionStats &coll,
                    Induction mode);

// -log2 P1, evaluated in log space. `param` is the induced distribution
// parameter; InL2 uses stats/coll instead.
double info_content(Model model, double tfn, double param,
                    const TermStats &stats, const CollectionStats &coll);

// P2. Laplace works on the (normalized) term frequency; Bernoulli on the
// raw one plus collection statistics, capped below 1.
double after_effect_prob(AfterEffect kind, double tfn, uint32_t f_td,
                         const TermStats &stats);

double score_dfr(const Query &query, std::string_view doc_id,
                 const InvertedIndex &index, const RankingConfig &config);

double score_lm_dirichlet(const Query &query, std::string_view doc_id,
                          const InvertedIndex &index, double mu);

// Top-k by score, ties broken by ascending doc id. Only documents that
// contain at least one query term are candidates.
std::vector<ScoredDoc> search(const Query &query, const InvertedIndex &index,
                              const RankingConfig &config, size_t k);

} // namespace adr
