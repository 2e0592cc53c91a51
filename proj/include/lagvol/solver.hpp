#pragma once

#include "lagvol/flowfield.hpp"

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lagvol {

/// Periodic box [lo, hi) x [lo, hi) with `cells` nodes per axis.
struct GridGeometry {
    int cells = 64;
    std::array<double, 2> lo{-1.0, -1.0};
    std::array<double, 2> hi{1.0, 1.0};

    double spacing(int axis) const { return (hi[axis] - lo[axis]) / cells; }
};

/// Nodal fields of a two-dimensional gas on a periodic grid. Nodes are
/// stored row-major: index = j * cells + i with i along x.
struct GridState {
    GridGeometry geometry;
    double gamma = 1.4;
    double time = 0.0;
    std::vector<double> rho, vx, vy, entropy;
    // P = rho^gamma exp(S), kept in sync by refresh_pressure().
    std::vector<double> pressure;

    std::size_t size() const { return rho.size(); }
    std::size_t index(int i, int j) const;
    Vec node(int i, int j) const;
    FluidState node_state(int i, int j) const;
    void refresh_pressure();
};

using InitialState = std::function<FluidState(const Vec& x)>;

GridState make_grid_state(const GridGeometry& geometry, double gamma, double time, const InitialState& init);

struct StepOptions {
    double cfl = 0.4;
    // Strength in [0, 1] of a sixth-order dissipative filter applied after
    // each step. Zero disables it.
    double filter_strength = 0.0;
};

/// Largest step allowed by dt <= cfl * min(dx) / max(|V| + c).
double max_stable_dt(const GridState& state, double cfl = 0.4);

/// One classical RK4 step of the Euler system with fourth-order centered
/// differences. Throws SolverError on a CFL violation, non-positive density
/// or NaN.
GridState step(const GridState& state, double dt, const StepOptions& options = {});

double total_mass(const GridState& state);

struct SmoothnessReport {
    double max_grad = 0.0;
    bool ok = true;
};

/// Largest discrete gradient norm over rho, V and P.
SmoothnessReport smoothness_guard(const GridState& state, double threshold);

/// Bicubic (4x4 Lagrange) periodic interpolation of the nodal fields.
FluidState interpolate(const GridState& state, const Vec& x);

/// Time-ordered snapshots of a solver run.
struct GridHistory {
    std::vector<GridState> snapshots;
};

struct EvolveResult {
    std::shared_ptr<GridHistory> history;
    bool smooth = true;
    double max_grad = 0.0;
    std::string message;
};

/// Advances to t_end with steps of at most dt, keeping every snapshot. Stops
/// early (smooth = false) when the smoothness guard trips or the stepper
/// leaves the smooth regime.
EvolveResult evolve(const GridState& initial, double t_end, double dt, const StepOptions& options,
                    double guard_threshold);

/// Grid-backed flow: bicubic in space, cubic Lagrange in time across the
/// stored snapshots. Queries beyond the last snapshot are DomainErrors.
FlowField make_grid_flow(std::shared_ptr<const GridHistory> history);

} // namespace lagvol
