#include "adr/special_math.hpp"

#include <cmath>
#include <limits>

#include "adr/error.hpp"

namespace adr {

namespace {

// Lanczos coefficients for g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178; // ln(2*pi)/2

double log_gamma_lanczos(double x) {
    // valid for x >= 0.5
    double acc = kLanczos[0];
    for (int i = 1; i < 9; ++i)
        acc += kLanczos[i] / (x - 1.0 + i);
    double t = x + kLanczosG - 0.5;
    return kHalfLogTwoPi + (x - 0.5) * std::log(t) - t + std::log(acc);
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0))
        throw_error(ErrorKind::Domain, "log_gamma: argument must be positive");
    if (x < 0.5) {
        // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
        double s = std::sin(M_PI * x);
        return std::log(M_PI / s) - log_gamma_lanczos(1.0 - x);
    }
    return log_gamma_lanczos(x);
}

double zeta_tail(double s, uint64_t from) {
    if (!(s > 1.0))
        throw_error(ErrorKind::Domain, "zeta_tail: needs s > 1");
    if (from < 1)
        throw_error(ErrorKind::Domain, "zeta_tail: needs from >= 1");
    // direct sum to N-1, then Euler-Maclaurin from N
    uint64_t N = from + 24;
    double sum = 0.0;
    for (uint64_t n = N - 1; n >= from; --n)
        sum += std::pow(static_cast<double>(n), -s);
    double Nd = static_cast<double>(N);
    double npow = std::pow(Nd, -s);
    sum += Nd * npow / (s - 1.0); // N^(1-s)/(s-1)
    sum += 0.5 * npow;
    double term = s * npow / Nd; // s * N^(-s-1)
    sum += term / 12.0;
    term *= (s + 1.0) * (s + 2.0) / (Nd * Nd);
    sum -= term / 720.0;
    term *= (s + 3.0) * (s + 4.0) / (Nd * Nd);
    sum += term / 30240.0;
    return sum;
}

double riemann_zeta(double s) {
    return zeta_tail(s, 1);
}

double normal_two_sided_p(double z) {
    return std::erfc(std::fabs(z) / M_SQRT2);
}

namespace {

// Continued fraction for the incomplete beta (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw_error(ErrorKind::Domain, "incomplete_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double front = std::exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0))
        throw_error(ErrorKind::Domain, "student_t_two_sided_p: df must be positive");
    if (std::isinf(t)) return 0.0;
    double x = df / (df + t * t);
    return incomplete_beta(df / 2.0, 0.5, x);
}

} // namespace adr
