#include "adr/distributions.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "adr/error.hpp"
#include "adr/optimize.hpp"
#include "adr/special_math.hpp"

namespace adr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kBracketLo = 1e-6;
constexpr double kBracketHi = 1e6;
constexpr double kParamTol = 1e-8; // relative, via log-space search
constexpr int kScanPoints = 61;

void validate_params(Family family, const DistParams &p) {
    switch (family) {
    case Family::Geometric:
        if (!(p.primary > 0.0) || p.primary > 1.0)
            throw_error(ErrorKind::Domain, "geometric: p must be in (0, 1]");
        return;
    case Family::Poisson:
        if (!(p.primary > 0.0))
            throw_error(ErrorKind::Domain, "poisson: lambda must be positive");
        return;
    case Family::NegativeBinomial:
        if (!(p.primary > 0.0))
            throw_error(ErrorKind::Domain, "negative_binomial: r must be positive");
        if (!(p.secondary > 0.0) || !(p.secondary < 1.0))
            throw_error(ErrorKind::Domain,
                        "negative_binomial: theta must be in (0, 1)");
        return;
    case Family::PowerLaw:
        if (!(p.primary > 1.0))
            throw_error(ErrorKind::Domain, "power_law: alpha must exceed 1");
        return;
    case Family::YuleSimon:
        if (!(p.primary > 0.0))
            throw_error(ErrorKind::Domain, "yule_simon: rho must be positive");
        return;
    case Family::LogLogistic:
        if (!(p.primary > 0.0) || !(p.secondary > 0.0))
            throw_error(ErrorKind::Domain,
                        "log_logistic: scale and shape must be positive");
        return;
    }
    throw_error(ErrorKind::Internal, "unknown family");
}

inline double softplus(double t) {
    return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

} // namespace

const std::string &family_name(Family family) {
    static const std::string names[] = {
        "geometric",  "log_logistic", "negative_binomial",
        "poisson",    "power_law",    "yule_simon",
    };
    return names[static_cast<int>(family)];
}

Family family_from_name(const std::string &name) {
    for (Family f : {Family::Geometric, Family::LogLogistic,
                     Family::NegativeBinomial, Family::Poisson, Family::PowerLaw,
                     Family::YuleSimon})
        if (family_name(f) == name) return f;
    throw_error(ErrorKind::Invalid, "unknown distribution family: " + name);
}

bool is_discrete(Family family) { return family != Family::LogLogistic; }

int param_count(Family family) {
    return (family == Family::NegativeBinomial || family == Family::LogLogistic)
        ? 2
        : 1;
}

std::vector<std::pair<std::string, double>> named_params(Family family,
                                                         const DistParams &p) {
    switch (family) {
    case Family::Geometric: return {{"p", p.primary}};
    case Family::Poisson: return {{"lambda", p.primary}};
    case Family::NegativeBinomial:
        return {{"r", p.primary}, {"theta", p.secondary}};
    case Family::PowerLaw: return {{"alpha", p.primary}};
    case Family::YuleSimon: return {{"rho", p.primary}};
    case Family::LogLogistic:
        return {{"scale", p.primary}, {"shape", p.secondary}};
    }
    throw_error(ErrorKind::Internal, "unknown family");
}

double log_pmf(Family family, const DistParams &p, uint64_t x) {
    validate_params(family, p);
    double xd = static_cast<double>(x);
    switch (family) {
    case Family::Geometric:
        if (x < 1) return kNegInf;
        if (p.primary == 1.0) return x == 1 ? 0.0 : kNegInf;
        return (xd - 1.0) * std::log1p(-p.primary) + std::log(p.primary);
    case Family::Poisson:
        // natural support keeps x = 0
        return -p.primary + xd * std::log(p.primary) - log_gamma(xd + 1.0);
    case Family::NegativeBinomial: {
        if (x < 1) return kNegInf;
        double y = xd - 1.0; // support shifted onto x >= 1
        double r = p.primary, theta = p.secondary;
        thread_local double cached_r = -1.0, cached_lg_r = 0.0;
        if (r != cached_r) {
            cached_lg_r = log_gamma(r);
            cached_r = r;
        }
        double lp = r * std::log1p(-theta);
        if (y > 0.0)
            lp += log_gamma(y + r) - cached_lg_r - log_gamma(y + 1.0) +
                  y * std::log(theta);
        return lp;
    }
    case Family::PowerLaw: {
        if (x < 1) return kNegInf;
        thread_local double cached_alpha = -1.0, cached_log_zeta = 0.0;
        if (p.primary != cached_alpha) {
            cached_log_zeta = std::log(riemann_zeta(p.primary));
            cached_alpha = p.primary;
        }
        return -p.primary * std::log(xd) - cached_log_zeta;
    }
    case Family::YuleSimon: {
        if (x < 1) return kNegInf;
        double rho = p.primary;
        thread_local double cached_rho = -1.0, cached_head = 0.0;
        if (rho != cached_rho) {
            cached_head = std::log(rho) + log_gamma(rho + 1.0);
            cached_rho = rho;
        }
        return cached_head + log_gamma(xd) - log_gamma(xd + rho + 1.0);
    }
    case Family::LogLogistic: {
        if (x < 1) return kNegInf;
        double scale = p.primary, shape = p.secondary;
        double d = std::log(xd) - std::log(scale);
        return std::log(shape) - std::log(scale) + (shape - 1.0) * d -
               2.0 * softplus(shape * d);
    }
    }
    throw_error(ErrorKind::Internal, "unknown family");
}

double pmf(Family family, const DistParams &p, uint64_t x) {
    return std::exp(log_pmf(family, p, x));
}

double log_likelihood(Family family, const DistParams &params,
                      const FrequencySample &sample) {
    if (sample.empty())
        throw_error(ErrorKind::Empty, "log_likelihood of empty sample");
    validate_params(family, params);
    KahanSum acc;
    bool impossible = false;
    sample.for_each([&](uint64_t value, uint64_t count) {
        if (impossible) return;
        double lp = log_pmf(family, params, value);
        if (std::isinf(lp)) {
            impossible = true;
            return;
        }
        acc.add(static_cast<double>(count) * lp);
    });
    return impossible ? kNegInf : acc.value();
}

namespace {

FittedModel finish_fit(Family family, DistParams params,
                       const FrequencySample &sample, bool boundary) {
    FittedModel fit;
    fit.family = family;
    fit.params = params;
    fit.k = param_count(family);
    fit.n = sample.size();
    fit.boundary = boundary;
    fit.log_likelihood = log_likelihood(family, params, sample);
    return fit;
}

DistParams default_params(Family family) {
    switch (family) {
    case Family::Geometric: return {0.5, 0.0};
    case Family::Poisson: return {1.0, 0.0};
    case Family::NegativeBinomial: return {1.0, 0.5};
    case Family::PowerLaw: return {2.0, 0.0};
    case Family::YuleSimon: return {1.0, 0.0};
    case Family::LogLogistic: return {1.0, 1.0};
    }
    throw_error(ErrorKind::Internal, "unknown family");
}

struct BracketSearch {
    double param = 0.0;
    bool boundary = false;
    bool flat = false; // objective was -inf everywhere
};

// Maximize ll over [lo, hi]: coarse scan on a log grid, then
// golden-section between the best point's neighbours.
BracketSearch maximize_on_log_bracket(const std::function<double(double)> &ll,
                                      double lo, double hi) {
    auto g = [&](double t) { return -ll(std::exp(t)); };
    double tlo = std::log(lo), thi = std::log(hi);
    GridScan scan = grid_scan_min(g, tlo, thi, kScanPoints);
    BracketSearch out;
    if (std::isinf(scan.best_f)) {
        out.param = std::exp(0.5 * (tlo + thi));
        out.boundary = true;
        out.flat = true;
        return out;
    }
    double step = (thi - tlo) / (kScanPoints - 1);
    double a = std::max(tlo, scan.best_x - step);
    double b = std::min(thi, scan.best_x + step);
    double t = golden_section_min(g, a, b, kParamTol);
    double f_best = std::min(g(t), scan.best_f);
    out.param = std::exp(t);
    // no interior maximum: a bracket edge does at least as well as the
    // refined optimum (likelihood sup sits on an open boundary)
    double slack = 1e-9 * std::max(1.0, std::fabs(f_best));
    out.boundary = g(tlo) <= f_best + slack || g(thi) <= f_best + slack;
    return out;
}

bool supports_sample(Family family, const FrequencySample &sample) {
    if (family == Family::Poisson) return true;
    return sample.min_value() >= 1;
}

uint64_t histogram_median(const FrequencySample &sample) {
    uint64_t half = (sample.size() + 1) / 2;
    uint64_t seen = 0, median = 1;
    bool found = false;
    sample.for_each([&](uint64_t value, uint64_t count) {
        if (found) return;
        seen += count;
        if (seen >= half) {
            median = value;
            found = true;
        }
    });
    return median;
}

FittedModel fit_log_logistic(const FrequencySample &sample) {
    double scale0 = std::max<double>(1.0, static_cast<double>(histogram_median(sample)));
    std::array<double, 2> start = {std::log(scale0), std::log(1.5)};
    auto objective = [&](const std::array<double, 2> &t) {
        DistParams p{std::exp(t[0]), std::exp(t[1])};
        return -log_likelihood(Family::LogLogistic, p, sample);
    };
    std::array<double, 2> best =
        nelder_mead_2d(objective, start, 0.5, 1e-12, 600);
    return finish_fit(Family::LogLogistic,
                      {std::exp(best[0]), std::exp(best[1])}, sample, false);
}

} // namespace

FittedModel fit_mle(Family family, const FrequencySample &sample) {
    if (sample.empty())
        throw_error(ErrorKind::Empty, "cannot fit an empty sample");

    if (!supports_sample(family, sample)) {
        // a value outside the family's support: no parameter explains it
        FittedModel fit;
        fit.family = family;
        fit.params = default_params(family);
        fit.k = param_count(family);
        fit.n = sample.size();
        fit.boundary = true;
        fit.log_likelihood = kNegInf;
        return fit;
    }

    switch (family) {
    case Family::Geometric: {
        double p = std::min(1.0, 1.0 / sample.mean());
        return finish_fit(family, {p, 0.0}, sample, false);
    }
    case Family::Poisson: {
        double mean = sample.mean();
        if (mean <= 0.0)
            return finish_fit(family, {kBracketLo, 0.0}, sample, true);
        return finish_fit(family, {mean, 0.0}, sample, false);
    }
    case Family::YuleSimon: {
        auto ll = [&](double rho) {
            return log_likelihood(family, {rho, 0.0}, sample);
        };
        BracketSearch s = maximize_on_log_bracket(ll, kBracketLo, kBracketHi);
        return finish_fit(family, {s.param, 0.0}, sample, s.boundary);
    }
    case Family::PowerLaw: {
        auto ll = [&](double alpha) {
            return log_likelihood(family, {alpha, 0.0}, sample);
        };
        BracketSearch s =
            maximize_on_log_bracket(ll, 1.0 + kBracketLo, kBracketHi);
        return finish_fit(family, {s.param, 0.0}, sample, s.boundary);
    }
    case Family::NegativeBinomial: {
        double m = sample.mean() - 1.0; // mean of the shifted counts
        if (m <= 0.0) {
            // every observation is 1; likelihood sup sits at theta -> 0
            return finish_fit(family, {1.0, 1e-9}, sample, true);
        }
        auto profile_theta = [&](double r) { return m / (r + m); };
        auto ll = [&](double r) {
            return log_likelihood(family, {r, profile_theta(r)}, sample);
        };
        BracketSearch s = maximize_on_log_bracket(ll, kBracketLo, kBracketHi);
        return finish_fit(family, {s.param, profile_theta(s.param)}, sample,
                          s.boundary);
    }
    case Family::LogLogistic:
        return fit_log_logistic(sample);
    }
    throw_error(ErrorKind::Internal, "unknown family");
}

namespace {

double pmf_ratio(Family family, const DistParams &p, uint64_t x) {
    // pmf(x + 1) / pmf(x) on the family's support
    switch (family) {
    case Family::Poisson:
        return p.primary / static_cast<double>(x + 1);
    case Family::NegativeBinomial: {
        double y = static_cast<double>(x - 1);
        return p.secondary * (y + p.primary) / (y + 1.0);
    }
    case Family::PowerLaw:
        return std::exp(-p.primary *
                        std::log(static_cast<double>(x + 1) / static_cast<double>(x)));
    case Family::YuleSimon:
        return static_cast<double>(x) / (static_cast<double>(x) + p.primary + 1.0);
    default:
        throw_error(ErrorKind::Internal, "no pmf recurrence for family");
    }
}

} // namespace

std::vector<uint64_t> sample_from(Family family, const DistParams &params,
                                  size_t n, uint64_t seed) {
    validate_params(family, params);
    if (family == Family::LogLogistic)
        throw_error(ErrorKind::Invalid,
                    "sampling the continuous family is not supported");
    if (n < 1)
        throw_error(ErrorKind::Invalid, "sample_from needs n >= 1");

    std::mt19937_64 rng(seed);
    auto next_u = [&] {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0, 1)
    };

    std::vector<uint64_t> draws;
    draws.reserve(n);

    if (family == Family::Geometric) {
        double p = params.primary;
        for (size_t i = 0; i < n; ++i) {
            double u = next_u();
            if (p == 1.0) {
                draws.push_back(1);
                continue;
            }
            double steps = std::floor(std::log1p(-u) / std::log1p(-p));
            draws.push_back(1 + static_cast<uint64_t>(steps));
        }
        return draws;
    }

    const uint64_t start = family == Family::Poisson ? 0 : 1;
    constexpr size_t kTableSize = 4096;

    // cumulative table over the head of the support
    std::vector<double> cum;
    cum.reserve(kTableSize);
    double f = pmf(family, params, start);
    double total = f;
    cum.push_back(total);
    uint64_t x = start;
    while (cum.size() < kTableSize && total < 1.0 - 1e-15) {
        f *= pmf_ratio(family, params, x);
        ++x;
        total += f;
        cum.push_back(total);
    }
    const uint64_t table_last = start + cum.size() - 1;

    auto tail_draw = [&](double u) -> uint64_t {
        switch (family) {
        case Family::Poisson:
        case Family::NegativeBinomial: {
            // continue the recurrence; geometric tail decay ends this fast
            double ff = f;
            double cc = cum.back();
            uint64_t xx = table_last;
            while (u >= cc && xx < (uint64_t(1) << 62)) {
                ff *= pmf_ratio(family, params, xx);
                ++xx;
                cc += ff;
                if (ff <= 0.0) break;
            }
            return xx;
        }
        case Family::PowerLaw: {
            double log_target = std::log1p(-u); // want P(X > x) <= 1 - u
            double log_zeta = std::log(riemann_zeta(params.primary));
            auto log_surv = [&](uint64_t v) {
                return std::log(zeta_tail(params.primary, v + 1)) - log_zeta;
            };
            uint64_t lo = table_last, hi = table_last;
            while (log_surv(hi) > log_target && hi < (uint64_t(1) << 62)) {
                lo = hi;
                hi *= 2;
            }
            while (lo + 1 < hi) {
                uint64_t mid = lo + (hi - lo) / 2;
                if (log_surv(mid) > log_target)
                    lo = mid;
                else
                    hi = mid;
            }
            return hi;
        }
        case Family::YuleSimon: {
            double log_target = std::log1p(-u);
            double head = log_gamma(params.primary + 1.0);
            auto log_surv = [&](uint64_t v) {
                double vd = static_cast<double>(v);
                return log_gamma(vd + 1.0) + head -
                       log_gamma(vd + params.primary + 1.0);
            };
            uint64_t lo = table_last, hi = table_last;
            while (log_surv(hi) > log_target && hi < (uint64_t(1) << 62)) {
                lo = hi;
                hi *= 2;
            }
            while (lo + 1 < hi) {
                uint64_t mid = lo + (hi - lo) / 2;
                if (log_surv(mid) > log_target)
                    lo = mid;
                else
                    hi = mid;
            }
            return hi;
        }
        default:
            throw_error(ErrorKind::Internal, "unreachable");
        }
    };

    for (size_t i = 0; i < n; ++i) {
        double u = next_u();
        if (u < cum.back()) {
            size_t idx = static_cast<size_t>(
                std::upper_bound(cum.begin(), cum.end(), u) - cum.begin());
            draws.push_back(start + idx);
        } else {
            draws.push_back(tail_draw(u));
        }
    }
    return draws;
}

void save_fits(const std::vector<FittedModel> &fits, const std::string &path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw_error(ErrorKind::Io, "cannot open fits file for writing: " + path);
    char buf[64];
    for (const FittedModel &fit : fits) {
        out << "family=" << family_name(fit.family);
        for (const auto &[name, value] : named_params(fit.family, fit.params)) {
            std::snprintf(buf, sizeof(buf), "%.17g", value);
            out << ' ' << name << '=' << buf;
        }
        std::snprintf(buf, sizeof(buf), "%.17g", fit.log_likelihood);
        out << " loglik=" << buf << " k=" << fit.k << " n=" << fit.n
            << " boundary=" << (fit.boundary ? 1 : 0) << '\n';
    }
    out.flush();
    if (!out)
        throw_error(ErrorKind::Io, "failed writing fits file: " + path);
}

std::vector<FittedModel> load_fits(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw_error(ErrorKind::Io, "cannot open fits file: " + path);
    std::vector<FittedModel> fits;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string token;
        FittedModel fit;
        bool have_family = false, have_loglik = false;
        std::vector<std::pair<std::string, double>> params;
        while (fields >> token) {
            size_t eq = token.find('=');
            if (eq == std::string::npos)
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(line_no) +
                                ": expected key=value, got " + token);
            std::string key = token.substr(0, eq);
            std::string value = token.substr(eq + 1);
            if (key == "family") {
                fit.family = family_from_name(value);
                have_family = true;
            } else if (key == "loglik") {
                fit.log_likelihood = std::strtod(value.c_str(), nullptr);
                have_loglik = true;
            } else if (key == "k") {
                fit.k = std::stoi(value);
            } else if (key == "n") {
                fit.n = std::stoull(value);
            } else if (key == "boundary") {
                fit.boundary = value != "0";
            } else {
                params.emplace_back(key, std::strtod(value.c_str(), nullptr));
            }
        }
        if (!have_family || !have_loglik)
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": fit line needs family= and loglik=");
        auto expected = named_params(fit.family, {});
        if (params.size() != expected.size())
            throw_error(ErrorKind::Format,
                        path + ":" + std::to_string(line_no) +
                            ": wrong parameter count for " +
                            family_name(fit.family));
        for (size_t i = 0; i < expected.size(); ++i) {
            if (params[i].first != expected[i].first)
                throw_error(ErrorKind::Format,
                            path + ":" + std::to_string(line_no) +
                                ": unexpected parameter " + params[i].first);
            (i == 0 ? fit.params.primary : fit.params.secondary) =
                params[i].second;
        }
        fits.push_back(fit);
    }
    return fits;
}

} // namespace adr
