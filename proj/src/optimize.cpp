#include "adr/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace adr {

double golden_section_min(const std::function<double(double)> &f, double lo,
                          double hi, double tol) {
    constexpr double kInvPhi = 0.6180339887498949; // 1/phi
    double a = lo, b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

GridScan grid_scan_min(const std::function<double(double)> &f, double lo,
                       double hi, int points) {
    GridScan scan;
    scan.points = points;
    for (int i = 0; i < points; ++i) {
        double x = lo + (hi - lo) * i / (points - 1);
        double fx = f(x);
        if (i == 0 || fx < scan.best_f) {
            scan.best_x = x;
            scan.best_f = fx;
            scan.best_index = i;
        }
    }
    return scan;
}

std::array<double, 2> nelder_mead_2d(
    const std::function<double(const std::array<double, 2> &)> &f,
    std::array<double, 2> start, double step, double tol, int max_iter) {
    using Point = std::array<double, 2>;
    struct Vertex {
        Point x;
        double f;
    };
    std::array<Vertex, 3> simplex;
    simplex[0] = {start, f(start)};
    for (int j = 0; j < 2; ++j) {
        Point p = start;
        p[j] += step;
        simplex[j + 1] = {p, f(p)};
    }
    auto order = [&] {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex &a, const Vertex &b) { return a.f < b.f; });
    };
    order();
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(simplex[2].f - simplex[0].f) < tol) break;
        Point centroid = {(simplex[0].x[0] + simplex[1].x[0]) / 2.0,
                          (simplex[0].x[1] + simplex[1].x[1]) / 2.0};
        auto blend = [&](double t) {
            return Point{centroid[0] + t * (centroid[0] - simplex[2].x[0]),
                         centroid[1] + t * (centroid[1] - simplex[2].x[1])};
        };
        Point refl = blend(1.0);
        double f_refl = f(refl);
        if (f_refl < simplex[0].f) {
            Point expand = blend(2.0);
            double f_expand = f(expand);
            simplex[2] = f_expand < f_refl ? Vertex{expand, f_expand}
                                           : Vertex{refl, f_refl};
        } else if (f_refl < simplex[1].f) {
            simplex[2] = {refl, f_refl};
        } else {
            Point contract = blend(-0.5);
            double f_contract = f(contract);
            if (f_contract < simplex[2].f) {
                simplex[2] = {contract, f_contract};
            } else {
                for (int j = 1; j < 3; ++j) {
                    simplex[j].x = {(simplex[j].x[0] + simplex[0].x[0]) / 2.0,
                                    (simplex[j].x[1] + simplex[0].x[1]) / 2.0};
                    simplex[j].f = f(simplex[j].x);
                }
            }
        }
        order();
    }
    return simplex[0].x;
}

} // namespace adr
