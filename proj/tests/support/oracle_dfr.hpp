// Test-only oracle: a straight-line transcription of the scoring formulas,
// evaluated per term with the standard library's lgamma/log2 and plain
// double sums. Deliberately shares no code with the engine's scoring path.
#pragma once

#include <cmath>
#include <string>

#include "adr/index.hpp"
#include "adr/ranking.hpp"

namespace oracle {

struct Setup {
    std::string model;        // pl2 inl2 lll2 spll2 ysl2
    std::string after_effect; // laplace bernoulli none
    std::string induction;    // tc dc
    double c = 1.0;
    bool laplace_raw_tf = false;
    bool ys_rho_plus_one = false;
};

inline double score_dfr(const adr::Query &query, const std::string &doc_id,
                        const adr::InvertedIndex &index, const Setup &setup) {
    const double N = static_cast<double>(index.num_docs());
    const double avg_len = index.collection().avg_len;
    uint32_t ordinal = index.doc_ordinal(doc_id);
    const double doc_len = index.doc_len(ordinal);

    double total = 0.0;
    for (const auto &[term, f_tq] : query.terms) {
        const adr::InvertedIndex::TermEntry *entry = index.find_term(term);
        if (entry == nullptr) continue;
        double f_td = 0.0;
        for (const adr::Posting &p : entry->postings)
            if (p.doc == ordinal) f_td = p.tf;
        if (f_td == 0.0) continue;

        double cf = static_cast<double>(entry->cf);
        double df = static_cast<double>(entry->df());
        double tfn = f_td * std::log2(1.0 + setup.c * avg_len / doc_len);
        double param = setup.induction == "tc" ? cf / N : df / N;

        double info = 0.0;
        if (setup.model == "pl2") {
            double lambda = param;
            double p1 = std::exp(-lambda) * std::pow(lambda, tfn) /
                        std::exp(std::lgamma(tfn + 1.0));
            info = -std::log2(p1);
        } else if (setup.model == "inl2") {
            info = tfn * std::log2((N + 1.0) / (df + 0.5));
        } else if (setup.model == "lll2") {
            info = std::log2((tfn + param) / param);
        } else if (setup.model == "spll2") {
            double lambda = param;
            if (lambda >= 1.0 - 1e-12) lambda = 1.0 - 1e-12;
            if (lambda <= 1e-12) lambda = 1e-12;
            double p1 = (std::pow(lambda, tfn / (tfn + 1.0)) - lambda) /
                        (1.0 - lambda);
            info = -std::log2(p1);
        } else if (setup.model == "ysl2") {
            double rho = setup.ys_rho_plus_one ? param + 1.0 : param;
            double log_p1 = std::log(rho) + std::lgamma(tfn) +
                            std::lgamma(rho + 1.0) -
                            std::lgamma(tfn + rho + 1.0);
            info = -log_p1 / std::log(2.0);
        }

        double risk = 1.0;
        if (setup.after_effect == "laplace") {
            double t = setup.laplace_raw_tf ? f_td : tfn;
            risk = 1.0 - t / (t + 1.0);
        } else if (setup.after_effect == "bernoulli") {
            double p2 = (cf + 1.0) / (df * f_td + 1.0);
            if (p2 >= 1.0) p2 = std::nextafter(1.0, 0.0);
            risk = 1.0 - p2;
        }
        total += f_tq * info * risk;
    }
    return total;
}

inline double score_lmdir(const adr::Query &query, const std::string &doc_id,
                          const adr::InvertedIndex &index, double mu) {
    uint32_t ordinal = index.doc_ordinal(doc_id);
    const double doc_len = index.doc_len(ordinal);
    const double total_tokens =
        static_cast<double>(index.collection().total_tokens);
    double total = 0.0;
    for (const auto &[term, f_tq] : query.terms) {
        const adr::InvertedIndex::TermEntry *entry = index.find_term(term);
        if (entry == nullptr || entry->cf == 0) continue;
        double f_td = 0.0;
        for (const adr::Posting &p : entry->postings)
            if (p.doc == index.doc_ordinal(doc_id)) f_td = p.tf;
        double p_coll = static_cast<double>(entry->cf) / total_tokens;
        total += f_tq * std::log2((f_td + mu * p_coll) / (doc_len + mu));
    }
    return total;
}

} // namespace oracle
