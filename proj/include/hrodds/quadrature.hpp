#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <vector>

namespace hrodds {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;  // sum of per-panel |K15 - G7| estimates
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace quad_detail {

// Gauss-Kronrod 15-point nodes (abscissae on [0,1], symmetric) with the
// embedded 7-point Gauss weights for the error estimate. Endpoints are never
// evaluated, so integrable endpoint singularities are tolerated.
inline constexpr double kNodes[8] = {
    0.000000000000000000, 0.207784955007898468, 0.405845151377397167,
    0.586087235467691130, 0.741531185599394440, 0.864864423359769073,
    0.949107912342758525, 0.991455371120812639,
};
inline constexpr double kKronrodWeights[8] = {
    0.209482141084727828, 0.204432940075298892, 0.190350578064785410,
    0.169004726639267903, 0.140653259715525919, 0.104790010322250184,
    0.063092092629978553, 0.022935322010529225,
};
inline constexpr double kGaussWeights[8] = {
    0.417959183673469388, 0.0, 0.381830050505118945, 0.0,
    0.279705391489276668, 0.0, 0.129484966168869693, 0.0,
};

template <class F>
void gauss_kronrod_15(F& f, double a, double b, double& k15, double& err) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double f_center = f(center);
    double gauss = kGaussWeights[0] * f_center;
    double kronrod = kKronrodWeights[0] * f_center;
    for (int i = 1; i < 8; ++i) {
        const double offset = half * kNodes[i];
        const double pair = f(center - offset) + f(center + offset);
        kronrod += kKronrodWeights[i] * pair;
        gauss += kGaussWeights[i] * pair;
    }
    k15 = kronrod * half;
    err = std::fabs((kronrod - gauss) * half);
}

}  // namespace quad_detail

// Adaptive Gauss-Kronrod integration over the union of the seed panels
// [points[k], points[k+1]). Always refines the worst panel first; stops when
// the summed error estimate drops below abs_tol or the panel budget runs out
// (converged = false in that case, with the best value and error so far).
template <class F>
QuadratureResult integrate_adaptive(F f, const std::vector<double>& points,
                                    double abs_tol, std::size_t max_panels = 100000) {
    struct Panel {
        double a, b, value, error;
        bool operator<(const Panel& other) const { return error < other.error; }
    };

    QuadratureResult out;
    std::priority_queue<Panel> panels;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        if (!(points[k] < points[k + 1])) continue;
        Panel p{points[k], points[k + 1], 0.0, 0.0};
        quad_detail::gauss_kronrod_15(f, p.a, p.b, p.value, p.error);
        out.evaluations += 15;
        total += p.value;
        total_err += p.error;
        panels.push(p);
    }

    std::size_t n_panels = panels.size();
    while (total_err > abs_tol && n_panels < max_panels && !panels.empty()) {
        const Panel worst = panels.top();
        panels.pop();
        total -= worst.value;
        total_err -= worst.error;
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval at floating-point resolution; keep its estimate as is
            total += worst.value;
            total_err += worst.error;
            break;
        }
        for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
            Panel p{lo, hi, 0.0, 0.0};
            quad_detail::gauss_kronrod_15(f, p.a, p.b, p.value, p.error);
            out.evaluations += 15;
            total += p.value;
            total_err += p.error;
            panels.push(p);
        }
        ++n_panels;
    }

    out.value = total;
    out.abs_error = total_err;
    out.converged = total_err <= abs_tol;
    return out;
}

}  // namespace hrodds
