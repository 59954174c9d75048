#include "adr/model_select.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "adr/error.hpp"
#include "adr/special_math.hpp"

namespace adr {

namespace {

constexpr double kAlpha = 0.05;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

double aic(const FittedModel &fit) {
    if (!std::isfinite(fit.log_likelihood))
        throw_error(ErrorKind::Invalid, "aic needs a finite log-likelihood");
    return 2.0 * fit.k - 2.0 * fit.log_likelihood;
}

VuongResult vuong(const FittedModel &a, const FittedModel &b,
                  const FrequencySample &sample) {
    if (sample.empty())
        throw_error(ErrorKind::Empty, "vuong needs a nonempty sample");
    if (a.n != sample.size() || b.n != sample.size())
        throw_error(ErrorKind::Invalid,
                    "vuong: both fits must come from the given sample");

    VuongResult result;
    result.first = a.family;
    result.second = b.family;

    // An observation one model assigns probability zero settles the
    // comparison outright.
    if (!std::isfinite(a.log_likelihood) || !std::isfinite(b.log_likelihood)) {
        result.degenerate = true;
        if (std::isfinite(a.log_likelihood)) {
            result.statistic = kInf;
            result.p_value = 0.0;
            result.preferred = a.family;
        } else if (std::isfinite(b.log_likelihood)) {
            result.statistic = -kInf;
            result.p_value = 0.0;
            result.preferred = b.family;
        } else {
            result.statistic = 0.0;
            result.p_value = 1.0;
        }
        return result;
    }

    double n = static_cast<double>(sample.size());
    KahanSum sum_d, sum_d2;
    bool pointwise_infinite = false;
    double infinite_sign = 0.0;
    sample.for_each([&](uint64_t value, uint64_t count) {
        double d = log_pmf(a.family, a.params, value) -
                   log_pmf(b.family, b.params, value);
        if (!std::isfinite(d)) {
            pointwise_infinite = true;
            infinite_sign = d > 0.0 ? 1.0 : -1.0;
            return;
        }
        sum_d.add(count * d);
        sum_d2.add(count * d * d);
    });
    if (pointwise_infinite) {
        result.degenerate = true;
        result.statistic = infinite_sign * kInf;
        result.p_value = 0.0;
        result.preferred = infinite_sign > 0.0 ? a.family : b.family;
        return result;
    }
    double total = sum_d.value();
    double mean = total / n;
    double var = n > 1.0 ? (sum_d2.value() - n * mean * mean) / (n - 1.0) : 0.0;
    double sd = var > 0.0 ? std::sqrt(var) : 0.0;

    if (sd == 0.0) {
        if (std::fabs(total) < 1e-12) {
            result.statistic = 0.0;
            result.p_value = 1.0;
            return result; // tie
        }
        result.degenerate = true;
        result.statistic = total > 0.0 ? kInf : -kInf;
        result.p_value = 0.0;
        result.preferred = total > 0.0 ? a.family : b.family;
        return result;
    }

    result.statistic = total / (std::sqrt(n) * sd);
    result.p_value = normal_two_sided_p(result.statistic);
    if (result.p_value < kAlpha)
        result.preferred = result.statistic > 0.0 ? a.family : b.family;
    return result;
}

ModelSelectionReport select_best(const std::vector<FittedModel> &fits,
                                 const FrequencySample &sample) {
    if (fits.size() < 2)
        throw_error(ErrorKind::Invalid,
                    "model selection needs at least 2 candidates");
    for (const FittedModel &fit : fits) {
        if (!is_discrete(fit.family))
            throw_error(ErrorKind::Invalid,
                        family_name(fit.family) +
                            " is not a selectable candidate");
        if (fit.n != sample.size())
            throw_error(ErrorKind::Invalid,
                        "candidate " + family_name(fit.family) +
                            " was fitted to a different sample");
    }

    ModelSelectionReport report;
    report.fits = fits;
    std::sort(report.fits.begin(), report.fits.end(),
              [](const FittedModel &a, const FittedModel &b) {
                  return family_name(a.family) < family_name(b.family);
              });
    for (size_t i = 1; i < report.fits.size(); ++i)
        if (report.fits[i].family == report.fits[i - 1].family)
            throw_error(ErrorKind::Invalid,
                        "duplicate candidate family: " +
                            family_name(report.fits[i].family));

    size_t winner_idx = 0;
    for (size_t i = 0; i < report.fits.size(); ++i) {
        const FittedModel &fit = report.fits[i];
        double a = std::isfinite(fit.log_likelihood) ? aic(fit) : kInf;
        report.aics.push_back(a);
        if (i > 0 && a < report.aics[winner_idx]) winner_idx = i;
        // equal AIC keeps the earlier (lexicographically smaller) family
    }
    report.winner = report.fits[winner_idx].family;

    for (size_t i = 0; i < report.fits.size(); ++i)
        for (size_t j = i + 1; j < report.fits.size(); ++j)
            report.pairwise.push_back(
                vuong(report.fits[i], report.fits[j], sample));

    for (const VuongResult &v : report.pairwise) {
        bool involves_winner = v.first == report.winner || v.second == report.winner;
        if (involves_winner && v.preferred.has_value() &&
            *v.preferred != report.winner)
            report.vuong_disagreement = true;
    }
    report.rationale = report.vuong_disagreement
        ? "lowest AIC (a Vuong head-to-head prefers another family; AIC kept)"
        : "lowest AIC, confirmed by pairwise Vuong tests";
    return report;
}

std::string ModelSelectionReport::to_text() const {
    std::ostringstream out;
    out << "model selection over " << fits.size() << " candidates (n="
        << (fits.empty() ? 0 : fits[0].n) << ")\n";
    for (size_t i = 0; i < fits.size(); ++i) {
        const FittedModel &fit = fits[i];
        out << "  " << family_name(fit.family) << ":";
        for (const auto &[name, value] : named_params(fit.family, fit.params))
            out << ' ' << name << '=' << format_double(value);
        out << " logL=" << format_double(fit.log_likelihood)
            << " AIC=" << format_double(aics[i]);
        if (fit.boundary) out << " [boundary]";
        out << '\n';
    }
    for (const VuongResult &v : pairwise) {
        out << "  vuong " << family_name(v.first) << " vs "
            << family_name(v.second) << ": V=" << format_double(v.statistic)
            << " p=" << format_double(v.p_value) << " -> "
            << (v.preferred ? family_name(*v.preferred) : std::string("tie"));
        if (v.degenerate) out << " [degenerate]";
        out << '\n';
    }
    out << "winner: " << family_name(winner) << " (" << rationale << ")\n";
    return out.str();
}

void ModelSelectionReport::save(const std::string &path) const {
    std::ostringstream out;
    out << "winner=" << family_name(winner) << '\n';
    out << "disagreement=" << (vuong_disagreement ? 1 : 0) << '\n';
    out << "rationale=" << rationale << '\n';
    for (size_t i = 0; i < fits.size(); ++i) {
        const FittedModel &fit = fits[i];
        out << "fit family=" << family_name(fit.family);
        for (const auto &[name, value] : named_params(fit.family, fit.params))
            out << ' ' << name << '=' << format_double(value);
        out << " loglik=" << format_double(fit.log_likelihood) << " k=" << fit.k
            << " n=" << fit.n << " boundary=" << (fit.boundary ? 1 : 0)
            << " aic=" << format_double(aics[i]) << '\n';
    }
    for (const VuongResult &v : pairwise) {
        out << "vuong a=" << family_name(v.first) << " b="
            << family_name(v.second) << " statistic=" << format_double(v.statistic)
            << " p=" << format_double(v.p_value) << " preferred="
            << (v.preferred ? family_name(*v.preferred) : std::string("tie"))
            << " degenerate=" << (v.degenerate ? 1 : 0) << '\n';
    }
    std::ofstream file(path, std::ios::trunc);
    if (!file)
        throw_error(ErrorKind::Io,
                    "cannot open selection report for writing: " + path);
    file << out.str();
    file.flush();
    if (!file)
        throw_error(ErrorKind::Io, "failed writing selection report: " + path);
}

ModelSelectionReport ModelSelectionReport::load(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open selection report: " + path);
    ModelSelectionReport report;
    bool have_winner = false;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.rfind("winner=", 0) == 0) {
            report.winner = family_from_name(line.substr(7));
            have_winner = true;
        } else if (line.rfind("disagreement=", 0) == 0) {
            report.vuong_disagreement = line.substr(13) != "0";
        } else if (line.rfind("rationale=", 0) == 0) {
            report.rationale = line.substr(10);
        } else if (line.rfind("fit ", 0) == 0) {
            std::istringstream fields(line.substr(4));
            std::string token;
            FittedModel fit;
            double aic_value = 0.0;
            std::vector<std::pair<std::string, double>> params;
            bool have_family = false;
            while (fields >> token) {
                size_t eq = token.find('=');
                if (eq == std::string::npos)
                    throw_error(ErrorKind::Format,
                                path + ":" + std::to_string(line_no) +
                                    ": expected key=value");
                std::string key = token.substr(0, eq);
                std::string value = token.substr(eq + 1);
                if (key == "family") {
                    fit.family = family_from_name(value);
                    have_family = true;
                } else if (key == "loglik") {
                    fit.log_likelihood = std::strtod(value.c_str(), nullptr);
                } else if (key == "k") {
                    fit.k = std::stoi(value);
                } else if (key == "n") {
                    fit.n = std::stoull(value);
                } else if (key == "boundary") {
                    fit.boundary = value != "0";
                } else if (key == "aic") {
                    aic_value = std::strtod(value.c_str(), nullptr);
                } else {
                    params.emplace_back(key, std::strtod(value.c_str(), nullptr));
                }
            }
            if (!have_family)
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(line_no) +
                                ": fit line without family");
            auto expected = named_params(fit.family, {});
            if (params.size() != expected.size())
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(line_no) +
                                ": wrong parameter count");
            for (size_t i = 0; i < expected.size(); ++i)
                (i == 0 ? fit.params.primary : fit.params.secondary) =
                    params[i].second;
            report.fits.push_back(fit);
            report.aics.push_back(aic_value);
        } else if (line.rfind("vuong ", 0) == 0) {
            // informational; the consumers only need winner and fits
            continue;
        } else {
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": unrecognized selection report line");
        }
    }
    if (!have_winner)
        throw_error(ErrorKind::Format, path + ": selection report has no winner");
    return report;
}

} // namespace adr
