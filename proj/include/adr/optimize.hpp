#pragma once

#include <array>
#include <functional>

namespace adr {

// Minimizes f on [lo, hi] by golden-section search; stops when the
// bracket width drops below tol. Returns the bracket midpoint.
double golden_section_min(const std::function<double(double)> &f, double lo,
                          double hi, double tol);

struct GridScan {
    double best_x = 0.0;
    double best_f = 0.0;
    int best_index = 0;
    int points = 0;
};

// Evaluates f at `points` equally spaced positions on [lo, hi] and
// returns the minimizer. Used to bracket before golden-section.
GridScan grid_scan_min(const std::function<double(double)> &f, double lo,
                       double hi, int points);

// Deterministic 2-D Nelder-Mead; returns the best vertex.
std::array<double, 2> nelder_mead_2d(
    const std::function<double(const std::array<double, 2> &)> &f,
    std::array<double, 2> start, double step, double tol, int max_iter);

} // namespace adr
