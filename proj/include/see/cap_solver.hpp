#ifndef SEE_CAP_SOLVER_HPP_
#define SEE_CAP_SOLVER_HPP_

#include "see/geometry.hpp"

#include <span>
#include <stdexcept>

namespace see {

enum class CapBranch { FullSphere, Hemisphere };

/// Plane (n, e) cutting the unit sphere, solving one of the two programs
///
///   FullSphere:  min e  s.t. e <= n.n,  e >= n.j for all j,  e in [0, 1]
///   Hemisphere:  max e  s.t. e >= n.n,  e <= n.j for all j,  e in [0, 1]
///
/// `axis` is the unit direction of n used to pose a view. When n is the zero
/// vector (degenerate spread) it is the minimizing direction of the program.
struct SphericalCapSolution {
    Vec3 normal = Vec3::Zero();
    double offset = 0.0;
    CapBranch branch = CapBranch::FullSphere;
    UnitVector axis{0.0, 0.0, 1.0};
    int iterations = 0;
};

class OptimizationError : public std::runtime_error {
public:
    OptimizationError(const std::string& what, SphericalCapSolution best)
        : std::runtime_error(what), best_(best) {}
    /// Best feasible iterate when the budget ran out.
    const SphericalCapSolution& best() const { return best_; }

private:
    SphericalCapSolution best_;
};

struct CapSolverOptions {
    int max_iterations = 200;
    double constraint_tolerance = 1e-6;
    /// The full-sphere result is treated as degenerate (plane through the
    /// center) when its offset is at or below this value.
    double degenerate_offset = 1e-4;
    /// Besides n(0), local solves also start from the `extra_starts` lowest
    /// directions of a `seed_lattice`-point sphere lattice, at least
    /// `seed_separation_rad` apart. Zero disables.
    int seed_lattice = 256;
    int extra_starts = 5;
    double seed_separation_rad = 0.35;
};

/// Local minimizer of max_j u.a_j over unit u, from `start`.
struct MinimaxResult {
    UnitVector direction;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Trust-region sequential linear programming on the tangent plane of the
/// sphere (gnomonic chart). Each subproblem min_delta max_j (g_j + w_j.delta)
/// over a box is solved exactly by constraint generation.
MinimaxResult minimize_max_projection(std::span<const Vec3> directions, const UnitVector& start, int max_iterations);

/// Runs the full-sphere program from n(0) = init (plus lattice starts) and
/// falls back to the hemisphere program from n(0) = -init when the first is
/// degenerate.
/// Throws OptimizationError (carrying the best iterate) if either solve
/// exhausts its iteration budget.
SphericalCapSolution solve_min_cap(std::span<const Vec3> directions, const UnitVector& init,
                                   const CapSolverOptions& options = {});

}  // namespace see

#endif  // SEE_CAP_SOLVER_HPP_
