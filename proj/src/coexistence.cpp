// Copyright 2026 The Unsharp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unsharp/coexistence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "unsharp/marginals.hpp"

namespace unsharp {

namespace {

void check_unbiased_pair(const UnbiasedPair &p) {
    if (!p.a.finite() || !p.b.finite() || p.a.norm() > 1.0 + validity_tol ||
        p.b.norm() > 1.0 + validity_tol) {
        throw std::invalid_argument("unbiased pair vectors must satisfy |a| <= 1 and |b| <= 1");
    }
}

using Point = std::array<double, 4>;

Effect to_effect(const Point &x) {
    return {x[0], Vec3{x[1], x[2], x[3]}};
}

/// min over the four induced effects of lambda_min. Concave in x, so every
/// local maximum is global; the searches below exploit this.
double margin_at(const Point &x, const Effect &e, const Effect &f) {
    const Effect g = to_effect(x);
    const Effect r1 = g;
    const Effect r2 = e - g;
    const Effect r3 = f - g;
    const Effect r4 = identity_effect - e - f + g;
    const double m1 = r1.f0 - r1.f.norm();
    const double m2 = r2.f0 - r2.f.norm();
    const double m3 = r3.f0 - r3.f.norm();
    const double m4 = r4.f0 - r4.f.norm();
    return std::min(std::min(m1, m2), std::min(m3, m4));
}

struct Best {
    Point x{};
    double margin = -std::numeric_limits<double>::infinity();

    void consider(const Point &cand, double m) {
        if (m > margin) {
            margin = m;
            x = cand;
        }
    }
};

/// Nelder-Mead on -margin, started from `start` with simplex edge `h`.
/// Every evaluation feeds `best`, so a wandering simplex can never lose
/// ground already gained.
void nelder_mead(const Effect &e,
                 const Effect &f,
                 const Point &start,
                 double h,
                 int max_iterations,
                 Best &best) {
    constexpr int dim = 4;
    constexpr int n_vertices = dim + 1;
    std::array<Point, n_vertices> xs;
    std::array<double, n_vertices> fs;
    const auto eval = [&](const Point &x) {
        const double m = margin_at(x, e, f);
        best.consider(x, m);
        return -m;
    };
    xs[0] = start;
    fs[0] = eval(xs[0]);
    for (int i = 0; i < dim; ++i) {
        xs[i + 1] = start;
        xs[i + 1][i] += h;
        fs[i + 1] = eval(xs[i + 1]);
    }
    const auto order = [&]() {
        std::array<int, n_vertices> idx{0, 1, 2, 3, 4};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
        std::array<Point, n_vertices> nxs;
        std::array<double, n_vertices> nfs;
        for (int i = 0; i < n_vertices; ++i) {
            nxs[i] = xs[idx[i]];
            nfs[i] = fs[idx[i]];
        }
        xs = nxs;
        fs = nfs;
    };
    const auto combine = [](const Point &a, double wa, const Point &b, double wb) {
        Point out;
        for (int i = 0; i < 4; ++i) {
            out[i] = wa * a[i] + wb * b[i];
        }
        return out;
    };
    for (int it = 0; it < max_iterations; ++it) {
        order();
        double diameter = 0.0;
        for (int i = 1; i < n_vertices; ++i) {
            for (int k = 0; k < dim; ++k) {
                diameter = std::max(diameter, std::abs(xs[i][k] - xs[0][k]));
            }
        }
        if (diameter <= 1e-12 && fs[n_vertices - 1] - fs[0] <= 1e-15) {
            break;
        }
        Point centroid{};
        for (int i = 0; i < n_vertices - 1; ++i) {
            for (int k = 0; k < dim; ++k) {
                centroid[k] += xs[i][k];
            }
        }
        for (int k = 0; k < dim; ++k) {
            centroid[k] /= dim;
        }
        const Point worst = xs[n_vertices - 1];
        const Point xr = combine(centroid, 2.0, worst, -1.0);
        const double fr = eval(xr);
        if (fr < fs[0]) {
            const Point xe = combine(centroid, 3.0, worst, -2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                xs[n_vertices - 1] = xe;
                fs[n_vertices - 1] = fe;
            } else {
                xs[n_vertices - 1] = xr;
                fs[n_vertices - 1] = fr;
            }
            continue;
        }
        if (fr < fs[n_vertices - 2]) {
            xs[n_vertices - 1] = xr;
            fs[n_vertices - 1] = fr;
            continue;
        }
        if (fr < fs[n_vertices - 1]) {
            const Point xc = combine(centroid, 0.5, xr, 0.5);
            const double fc = eval(xc);
            if (fc <= fr) {
                xs[n_vertices - 1] = xc;
                fs[n_vertices - 1] = fc;
                continue;
            }
        } else {
            const Point xc = combine(centroid, 0.5, worst, 0.5);
            const double fc = eval(xc);
            if (fc < fs[n_vertices - 1]) {
                xs[n_vertices - 1] = xc;
                fs[n_vertices - 1] = fc;
                continue;
            }
        }
        for (int i = 1; i < n_vertices; ++i) {
            xs[i] = combine(xs[0], 0.5, xs[i], 0.5);
            fs[i] = eval(xs[i]);
        }
    }
    order();
}

/// Pattern search over all 80 nonzero sign patterns of the four coordinates
/// with geometrically shrinking steps. The objective is concave but kinked
/// where the active minimum switches; the full pattern set still finds an
/// ascent move at kinks that block single-coordinate steps.
void compass_polish(const Effect &e, const Effect &f, Best &best) {
    double step = 0.05;
    int evals = 0;
    while (step >= 1e-13 && evals < 40000) {
        bool improved = false;
        for (int pattern = 1; pattern < 81; ++pattern) {
            Point cand = best.x;
            int code = pattern;
            for (int k = 0; k < 4; ++k) {
                const int digit = code % 3;
                code /= 3;
                if (digit == 1) {
                    cand[k] += step;
                } else if (digit == 2) {
                    cand[k] -= step;
                }
            }
            const double m = margin_at(cand, e, f);
            ++evals;
            if (m > best.margin) {
                best.consider(cand, m);
                improved = true;
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
}

void check_config(const SearchConfig &cfg) {
    if (cfg.grid_resolution < 2 || cfg.refine_iterations < 0 || !(cfg.tolerance > 0.0)) {
        throw std::invalid_argument(
            "search config requires grid_resolution >= 2, refine_iterations >= 0, tolerance > 0");
    }
}

FeasibilityResult joint_feasibility_impl(const Effect &e_plus,
                                         const Effect &f_plus,
                                         const SearchConfig &cfg,
                                         const std::vector<Point> &extra_starts) {
    if (!effect_validate(e_plus) || !effect_validate(f_plus)) {
        throw std::invalid_argument("joint_feasibility requires valid effects");
    }
    check_config(cfg);
    const int res = cfg.grid_resolution;
    const double inv = 1.0 / static_cast<double>(res - 1);
    Best best;
    Best grid_best;
    for (int i0 = 0; i0 < res; ++i0) {
        for (int i1 = 0; i1 < res; ++i1) {
            for (int i2 = 0; i2 < res; ++i2) {
                for (int i3 = 0; i3 < res; ++i3) {
                    const Point x{i0 * inv, -1.0 + 2.0 * i1 * inv, -1.0 + 2.0 * i2 * inv,
                                  -1.0 + 2.0 * i3 * inv};
                    const double m = margin_at(x, e_plus, f_plus);
                    grid_best.consider(x, m);
                }
            }
        }
    }
    best = grid_best;
    std::vector<Point> starts;
    starts.push_back(grid_best.x);
    starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
    for (const Point &start : starts) {
        best.consider(start, margin_at(start, e_plus, f_plus));
        // Restarted simplex runs: each stage re-inflates around the incumbent
        // with a smaller edge, which recovers from premature collapse.
        for (const double h : {0.25, 0.02, 1e-3, 1e-5}) {
            nelder_mead(e_plus, f_plus, best.x, h, cfg.refine_iterations, best);
        }
    }
    compass_polish(e_plus, f_plus, best);
    FeasibilityResult result;
    result.margin = best.margin;
    result.feasible = best.margin >= -cfg.tolerance;
    result.witness = to_effect(best.x);
    return result;
}

}  // namespace

CriterionResult busch_criterion(const UnbiasedPair &p) {
    check_unbiased_pair(p);
    const double lhs = 0.5 * (p.a + p.b).norm() + 0.5 * (p.a - p.b).norm();
    return {lhs <= 1.0 + validity_tol, lhs};
}

CriterionResult perpendicular_criterion(const UnbiasedPair &p) {
    check_unbiased_pair(p);
    if (std::abs(dot(p.a, p.b)) > 1e-9) {
        throw std::invalid_argument("perpendicularity violated");
    }
    const double lhs = p.a.norm2() + p.b.norm2();
    return {lhs <= 1.0 + validity_tol, lhs};
}

FeasibilityResult joint_feasibility(const Effect &e_plus,
                                    const Effect &f_plus,
                                    const SearchConfig &cfg) {
    return joint_feasibility_impl(e_plus, f_plus, cfg, {});
}

ModelMarginalReport model_marginal_coexistence(const SchemeParams &p, const SearchConfig &cfg) {
    const FourOutcomePovm povm = four_effects(p);
    const ThreeMarginals m = marginals(povm);
    const Point witness{povm.f_pp.f0, povm.f_pp.f.x, povm.f_pp.f.y, povm.f_pp.f.z};
    ModelMarginalReport report;
    report.pair13 = joint_feasibility_impl(m.m1.plus, m.m3.plus, cfg, {witness});
    report.pair23 = joint_feasibility_impl(m.m2.plus, m.m3.plus, cfg, {witness});
    return report;
}

}  // namespace unsharp
