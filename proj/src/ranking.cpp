#include "adr/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "adr/error.hpp"
#include "adr/special_math.hpp"
#include "adr/tokenizer.hpp"

namespace adr {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kSpllClamp = 1e-12;

const Posting *find_posting(const InvertedIndex::TermEntry &entry,
                            uint32_t ordinal) {
    auto it = std::lower_bound(entry.postings.begin(), entry.postings.end(),
                               ordinal, [](const Posting &p, uint32_t ord) {
                                   return p.doc < ord;
                               });
    if (it == entry.postings.end() || it->doc != ordinal) return nullptr;
    return &*it;
}

double induced_scoring_param(Model model, const TermStats &stats,
                             const CollectionStats &coll,
                             const RankingConfig &config) {
    double param = induce_param(stats, coll, config.induction);
    if (model == Model::SPLL2)
        param = std::clamp(param, kSpllClamp, 1.0 - kSpllClamp);
    if (model == Model::YSL2 && config.ys_rho_plus_one)
        param += 1.0;
    return param;
}

} // namespace

const std::string &model_name(Model m) {
    static const std::string names[] = {"pl2", "inl2", "lll2",
                                        "spll2", "ysl2", "lmdir"};
    return names[static_cast<int>(m)];
}

Model model_from_name(const std::string &name) {
    for (Model m : {Model::PL2, Model::InL2, Model::LLL2, Model::SPLL2,
                    Model::YSL2, Model::LMDir})
        if (model_name(m) == name) return m;
    throw_error(ErrorKind::Invalid, "unknown ranking model: " + name);
}

const std::string &after_effect_name(AfterEffect a) {
    static const std::string names[] = {"laplace", "bernoulli"};
    return names[static_cast<int>(a)];
}

AfterEffect after_effect_from_name(const std::string &name) {
    if (name == "laplace") return AfterEffect::Laplace;
    if (name == "bernoulli") return AfterEffect::Bernoulli;
    throw_error(ErrorKind::Invalid, "unknown after-effect: " + name);
}

const std::string &induction_name(Induction i) {
    static const std::string names[] = {"tc", "dc"};
    return names[static_cast<int>(i)];
}

Induction induction_from_name(const std::string &name) {
    if (name == "tc") return Induction::Tc;
    if (name == "dc") return Induction::Dc;
    throw_error(ErrorKind::Invalid, "unknown induction mode: " + name);
}

Query Query::from_text(std::string id, std::string_view text) {
    Query q;
    q.id = std::move(id);
    for (const std::string &token : tokenize(text)) q.terms[token] += 1;
    return q;
}

double normalize_tf(double f_td, uint64_t doc_len, double avg_len, double c) {
    if (f_td == 0.0) return 0.0;
    if (!(f_td > 0.0))
        throw_error(ErrorKind::Invalid, "normalize_tf: f_td must be nonnegative");
    if (doc_len == 0)
        throw_error(ErrorKind::Invalid, "normalize_tf: zero document length");
    if (!(avg_len > 0.0) || !(c > 0.0))
        throw_error(ErrorKind::Invalid,
                    "normalize_tf: avg_len and c must be positive");
    return f_td * std::log2(1.0 + c * avg_len / static_cast<double>(doc_len));
}

double induce_param(const TermStats &stats, const CollectionStats &coll,
                    Induction mode) {
    if (coll.num_docs < 1)
        throw_error(ErrorKind::Empty, "induce_param on empty collection");
    uint64_t numerator = mode == Induction::Tc ? stats.cf : stats.df;
    if (numerator == 0)
        throw_error(ErrorKind::Invalid,
                    "induce_param: term does not occur in the collection");
    return static_cast<double>(numerator) / static_cast<double>(coll.num_docs);
}

double info_content(Model model, double tfn, double param,
                    const TermStats &stats, const CollectionStats &coll) {
    if (!(tfn > 0.0))
        throw_error(ErrorKind::Invalid, "info_content: tfn must be positive");
    switch (model) {
    case Model::PL2: {
        if (!(param > 0.0))
            throw_error(ErrorKind::Domain, "pl2: lambda must be positive");
        // -log2 of e^-lambda lambda^tfn / Gamma(tfn + 1)
        return (param - tfn * std::log(param) + log_gamma(tfn + 1.0)) / kLn2;
    }
    case Model::InL2: {
        if (stats.df == 0)
            throw_error(ErrorKind::Invalid, "inl2: term has df = 0");
        double n = static_cast<double>(coll.num_docs);
        return tfn * std::log2((n + 1.0) / (stats.df + 0.5));
    }
    case Model::LLL2: {
        if (!(param > 0.0))
            throw_error(ErrorKind::Domain, "lll2: r must be positive");
        return std::log2((tfn + param) / param);
    }
    case Model::SPLL2: {
        if (!(param > 0.0) || !(param < 1.0))
            throw_error(ErrorKind::Domain, "spll2: lambda must be in (0, 1)");
        double frac = tfn / (tfn + 1.0);
        double value = (std::pow(param, frac) - param) / (1.0 - param);
        return -std::log2(value);
    }
    case Model::YSL2: {
        if (!(param > 0.0))
            throw_error(ErrorKind::Domain, "ysl2: rho must be positive");
        double log_p1 = std::log(param) + log_gamma(tfn) +
                        log_gamma(param + 1.0) - log_gamma(tfn + param + 1.0);
        return -log_p1 / kLn2;
    }
    case Model::LMDir:
        throw_error(ErrorKind::Invalid, "lmdir has no DFR information content");
    }
    throw_error(ErrorKind::Internal, "unknown model");
}

double after_effect_prob(AfterEffect kind, double tfn, uint32_t f_td,
                         const TermStats &stats) {
    switch (kind) {
    case AfterEffect::Laplace:
        if (!(tfn > 0.0))
            throw_error(ErrorKind::Invalid, "laplace after-effect needs tfn > 0");
        return tfn / (tfn + 1.0);
    case AfterEffect::Bernoulli: {
        if (f_td < 1)
            throw_error(ErrorKind::Invalid,
                        "bernoulli after-effect needs f_td >= 1");
        double value = (static_cast<double>(stats.cf) + 1.0) /
                       (static_cast<double>(stats.df) * f_td + 1.0);
        return std::min(value, std::nextafter(1.0, 0.0));
    }
    }
    throw_error(ErrorKind::Internal, "unknown after-effect");
}

namespace {

double term_contribution(const RankingConfig &config, uint32_t f_tq,
                         uint32_t f_td, uint64_t doc_len,
                         const TermStats &stats, const CollectionStats &coll) {
    double tfn = normalize_tf(f_td, doc_len, coll.avg_len, config.c);
    double param = induced_scoring_param(config.model, stats, coll, config);
    double info = info_content(config.model, tfn, param, stats, coll);
    double risk = 1.0;
    if (config.use_after_effect) {
        double p2 = config.after_effect == AfterEffect::Laplace
            ? after_effect_prob(AfterEffect::Laplace,
                                config.laplace_raw_tf ? f_td : tfn, f_td, stats)
            : after_effect_prob(AfterEffect::Bernoulli, tfn, f_td, stats);
        risk = 1.0 - p2;
    }
    return f_tq * info * risk;
}

} // namespace

double score_dfr(const Query &query, std::string_view doc_id,
                 const InvertedIndex &index, const RankingConfig &config) {
    if (config.model == Model::LMDir)
        throw_error(ErrorKind::Invalid, "score_dfr does not take lmdir");
    index.require_scorable();
    uint32_t ordinal = index.doc_ordinal(doc_id);
    const CollectionStats &coll = index.collection();
    KahanSum score;
    for (const auto &[term, f_tq] : query.terms) {
        const InvertedIndex::TermEntry *entry = index.find_term(term);
        if (entry == nullptr) continue;
        const Posting *posting = find_posting(*entry, ordinal);
        if (posting == nullptr) continue;
        TermStats stats{entry->cf, entry->df()};
        score.add(term_contribution(config, f_tq, posting->tf,
                                    index.doc_len(ordinal), stats, coll));
    }
    return score.value();
}

double score_lm_dirichlet(const Query &query, std::string_view doc_id,
                          const InvertedIndex &index, double mu) {
    if (!(mu > 0.0))
        throw_error(ErrorKind::Invalid, "lmdir: mu must be positive");
    index.require_scorable();
    if (index.collection().total_tokens == 0)
        throw_error(ErrorKind::Empty, "lmdir: collection has no tokens");
    uint32_t ordinal = index.doc_ordinal(doc_id);
    double doc_len = index.doc_len(ordinal);
    double total = static_cast<double>(index.collection().total_tokens);
    KahanSum score;
    for (const auto &[term, f_tq] : query.terms) {
        const InvertedIndex::TermEntry *entry = index.find_term(term);
        if (entry == nullptr) continue; // absent from the corpus: skipped
        const Posting *posting = find_posting(*entry, ordinal);
        double f_td = posting == nullptr ? 0.0 : posting->tf;
        double p_collection = static_cast<double>(entry->cf) / total;
        score.add(f_tq *
                  std::log2((f_td + mu * p_collection) / (doc_len + mu)));
    }
    return score.value();
}

std::vector<ScoredDoc> search(const Query &query, const InvertedIndex &index,
                              const RankingConfig &config, size_t k) {
    if (k < 1)
        throw_error(ErrorKind::Invalid, "search needs k >= 1");
    index.require_scorable();
    const CollectionStats &coll = index.collection();

    // candidates: every document holding at least one query term
    std::vector<uint32_t> candidates;
    for (const auto &[term, f_tq] : query.terms) {
        const InvertedIndex::TermEntry *entry = index.find_term(term);
        if (entry == nullptr) continue;
        for (const Posting &p : entry->postings) candidates.push_back(p.doc);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());
    if (candidates.empty()) return {};

    std::vector<double> scores(candidates.size());
    if (config.model == Model::LMDir) {
        for (size_t i = 0; i < candidates.size(); ++i)
            scores[i] = score_lm_dirichlet(query, index.doc_id(candidates[i]),
                                           index, config.mu);
    } else {
        // terms in lexicographic order, per-document compensated sums
        std::vector<KahanSum> sums(candidates.size());
        for (const auto &[term, f_tq] : query.terms) {
            const InvertedIndex::TermEntry *entry = index.find_term(term);
            if (entry == nullptr) continue;
            TermStats stats{entry->cf, entry->df()};
            for (const Posting &p : entry->postings) {
                size_t slot = static_cast<size_t>(
                    std::lower_bound(candidates.begin(), candidates.end(), p.doc) -
                    candidates.begin());
                sums[slot].add(term_contribution(config, f_tq, p.tf,
                                                 index.doc_len(p.doc), stats,
                                                 coll));
            }
        }
        for (size_t i = 0; i < candidates.size(); ++i)
            scores[i] = sums[i].value();
    }

    std::vector<ScoredDoc> hits;
    hits.reserve(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i)
        hits.push_back({index.doc_id(candidates[i]), scores[i]});
    std::sort(hits.begin(), hits.end(), [](const ScoredDoc &a, const ScoredDoc &b) {
        if (a.score != b.score) return a.score > b.score;
        return a.doc_id < b.doc_id;
    });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

} // namespace adr
