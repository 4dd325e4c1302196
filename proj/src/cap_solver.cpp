#include "see/cap_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace see {

namespace {

struct Affine {
    double g;
    double w1;
    double w2;
    double at(double d1, double d2) const { return g + w1 * d1 + w2 * d2; }
};

struct BoxStep {
    double d1 = 0.0;
    double d2 = 0.0;
    double model = 0.0;
};

double max_at(const std::vector<Affine>& fns, double d1, double d2) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Affine& f : fns) m = std::max(m, f.at(d1, d2));
    return m;
}

/// Exact min over |d|_inf <= box of max_i f_i(d). A convex piecewise-linear
/// function on a square attains its minimum at a corner, where a crease
/// meets an edge, or where three pieces meet; all are enumerated.
BoxStep solve_small_box_minimax(const std::vector<Affine>& fns, double box) {
    BoxStep best{0.0, 0.0, max_at(fns, 0.0, 0.0)};
    double best_norm = 0.0;
    const double slack = box * (1.0 + 1e-12);
    auto consider = [&](double d1, double d2) {
        if (!(std::abs(d1) <= slack && std::abs(d2) <= slack)) return;
        d1 = std::clamp(d1, -box, box);
        d2 = std::clamp(d2, -box, box);
        const double v = max_at(fns, d1, d2);
        const double n = d1 * d1 + d2 * d2;
        if (v < best.model - 1e-15 || (v <= best.model + 1e-15 && n < best_norm)) {
            best = {d1, d2, v};
            best_norm = n;
        }
    };
    for (double s1 : {-box, box}) {
        for (double s2 : {-box, box}) consider(s1, s2);
    }
    const std::size_t n = fns.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            const double dg = fns[i].g - fns[k].g;
            const double a1 = fns[i].w1 - fns[k].w1;
            const double a2 = fns[i].w2 - fns[k].w2;
            // Crease a1 d1 + a2 d2 + dg = 0 against the four edges.
            for (double s : {-box, box}) {
                if (a2 != 0.0) consider(s, -(dg + a1 * s) / a2);
                if (a1 != 0.0) consider(-(dg + a2 * s) / a1, s);
            }
            for (std::size_t l = k + 1; l < n; ++l) {
                const double b1 = fns[i].w1 - fns[l].w1;
                const double b2 = fns[i].w2 - fns[l].w2;
                const double dh = fns[i].g - fns[l].g;
                const double det = a1 * b2 - a2 * b1;
                if (std::abs(det) < 1e-300) continue;
                consider((-dg * b2 + dh * a2) / det, (-dh * a1 + dg * b1) / det);
            }
        }
    }
    return best;
}

struct TangentBasis {
    Vec3 e1;
    Vec3 e2;
};

TangentBasis tangent_basis(const Vec3& u) {
    const Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 e1 = (seed - seed.dot(u) * u).normalized();
    return {e1, u.cross(e1)};
}

double max_projection(std::span<const Vec3> dirs, const Vec3& u) {
    double m = -std::numeric_limits<double>::infinity();
    for (const Vec3& a : dirs) m = std::max(m, u.dot(a));
    return m;
}

/// Solves the linearized subproblem over the pruned candidate set by
/// constraint generation.
BoxStep solve_subproblem(const std::vector<Affine>& candidates, double box) {
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const std::size_t seed = std::min<std::size_t>(3, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seed), order.end(),
                      [&](std::size_t a, std::size_t b) { return candidates[a].g > candidates[b].g; });

    std::vector<Affine> working;
    std::vector<bool> in_working(candidates.size(), false);
    for (std::size_t i = 0; i < seed; ++i) {
        working.push_back(candidates[order[i]]);
        in_working[order[i]] = true;
    }

    constexpr std::size_t kMaxWorking = 48;
    BoxStep step;
    for (;;) {
        step = solve_small_box_minimax(working, box);
        double worst = 1e-14;
        std::size_t worst_idx = candidates.size();
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (in_working[i]) continue;
            const double v = candidates[i].at(step.d1, step.d2) - step.model;
            if (v > worst) {
                worst = v;
                worst_idx = i;
            }
        }
        if (worst_idx == candidates.size()) break;
        if (working.size() >= kMaxWorking) {
            step.model += worst;
            break;
        }
        working.push_back(candidates[worst_idx]);
        in_working[worst_idx] = true;
    }
    return step;
}

}  // namespace

MinimaxResult minimize_max_projection(std::span<const Vec3> directions, const UnitVector& start, int max_iterations) {
    MinimaxResult result{start, max_projection(directions, start.vec()), 0, false};
    if (directions.empty()) {
        result.converged = true;
        return result;
    }

    Vec3 u = start.vec();
    double value = result.value;
    double radius = 0.5;  // trust region half-width in gnomonic units
    constexpr double kMaxRadius = 1.0;
    constexpr double kMinRadius = 1e-10;
    std::vector<Affine> candidates;

    for (int it = 0; it < max_iterations; ++it) {
        result.iterations = it + 1;
        const TangentBasis basis = tangent_basis(u);
        // Only constraints that can reach the current max within the box matter.
        const double cutoff = value - 2.0 * std::sqrt(2.0) * radius;
        candidates.clear();
        for (const Vec3& a : directions) {
            const double g = u.dot(a);
            if (g >= cutoff) candidates.push_back({g, basis.e1.dot(a), basis.e2.dot(a)});
        }
        const BoxStep step = solve_subproblem(candidates, radius);
        const double predicted = value - step.model;
        if (predicted <= 1e-13) {
            result.converged = true;
            break;
        }

        const Vec3 trial = (u + step.d1 * basis.e1 + step.d2 * basis.e2).normalized();
        const double trial_value = max_projection(directions, trial);
        const double ratio = (value - trial_value) / predicted;
        const double step_len = std::max(std::abs(step.d1), std::abs(step.d2));
        if (ratio > 0.01) {
            u = trial;
            value = trial_value;
        }
        if (ratio > 0.75 && step_len >= 0.99 * radius) {
            radius = std::min(2.0 * radius, kMaxRadius);
        } else if (ratio < 0.25) {
            radius = 0.25 * std::max(step_len, kMinRadius);
        }
        if (radius < kMinRadius) {
            result.converged = true;
            break;
        }
    }
    result.direction = UnitVector(u);
    result.value = value;
    return result;
}

namespace {

// Fibonacci lattice used to seed extra local solves.
std::vector<Vec3> seed_lattice(int n) {
    std::vector<Vec3> out;
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double rho = std::sqrt(1.0 - z * z);
        out.emplace_back(rho * std::cos(golden * i), rho * std::sin(golden * i), z);
    }
    return out;
}

// Local solve from `start` plus from the lowest lattice directions (pairwise
// apart); the lowest value wins, the start's own result on ties.
MinimaxResult multistart_min_max_projection(std::span<const Vec3> directions, const UnitVector& start,
                                            const CapSolverOptions& options) {
    MinimaxResult best = minimize_max_projection(directions, start, options.max_iterations);
    if (options.seed_lattice <= 0 || options.extra_starts <= 0) return best;

    static thread_local std::vector<Vec3> lattice;
    if (static_cast<int>(lattice.size()) != options.seed_lattice) lattice = seed_lattice(options.seed_lattice);
    std::vector<std::pair<double, int>> scored;
    scored.reserve(lattice.size());
    for (int i = 0; i < static_cast<int>(lattice.size()); ++i) {
        scored.emplace_back(max_projection(directions, lattice[i]), i);
    }
    std::sort(scored.begin(), scored.end());

    const double min_cos = std::cos(options.seed_separation_rad);
    std::vector<Vec3> seeds;
    for (const auto& [value, i] : scored) {
        if (static_cast<int>(seeds.size()) >= options.extra_starts) break;
        bool apart = true;
        for (const Vec3& q : seeds) apart = apart && q.dot(lattice[i]) < min_cos;
        if (apart) seeds.push_back(lattice[i]);
    }
    for (const Vec3& q : seeds) {
        const MinimaxResult r = minimize_max_projection(directions, UnitVector(q), options.max_iterations);
        if (r.value < best.value - 1e-12) {
            const int used = best.iterations + r.iterations;
            best = r;
            best.iterations = used;
        } else {
            best.iterations += r.iterations;
        }
    }
    return best;
}

}  // namespace

SphericalCapSolution solve_min_cap(std::span<const Vec3> directions, const UnitVector& init,
                                   const CapSolverOptions& options) {
    if (directions.empty()) throw std::invalid_argument("solve_min_cap needs at least one direction");

    const MinimaxResult full = multistart_min_max_projection(directions, init, options);
    // Along its axis the full-sphere program is optimal at n = c u, e = c^2
    // with c the largest projection; c <= 0 collapses to the plane e = 0.
    const double c = std::max(full.value, 0.0);
    SphericalCapSolution full_sol{c * full.direction.vec(), c * c, CapBranch::FullSphere, full.direction,
                                  full.iterations};
    if (!full.converged) throw OptimizationError("full-sphere cap program did not converge", full_sol);
    if (full_sol.offset > options.degenerate_offset) return full_sol;

    std::vector<Vec3> negated(directions.begin(), directions.end());
    for (Vec3& v : negated) v = -v;
    const MinimaxResult hemi = multistart_min_max_projection(negated, -init, options);
    // max_u min_j u.j = -min_u max_j u.(-j); n = h u, e = h^2 for h > 0.
    const double h = -hemi.value;
    SphericalCapSolution hemi_sol{h * hemi.direction.vec(), h * h, CapBranch::Hemisphere, hemi.direction,
                                  full.iterations + hemi.iterations};
    if (!hemi.converged) {
        throw OptimizationError("hemisphere cap program did not converge", h > 0.0 ? hemi_sol : full_sol);
    }
    if (h > 0.0) return hemi_sol;
    // Neither program has a cap with positive offset: the directions straddle
    // a great circle. The full-sphere plane (possibly n = 0, e = 0) stays feasible.
    return full_sol;
}

}  // namespace see
