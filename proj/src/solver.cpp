#include "lagvol/solver.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lagvol {

std::size_t GridState::index(int i, int j) const
{
    const int n = geometry.cells;
    i = ((i % n) + n) % n;
    j = ((j % n) + n) % n;
    return static_cast<std::size_t>(j) * n + i;
}

Vec GridState::node(int i, int j) const
{
    return {geometry.lo[0] + i * geometry.spacing(0), geometry.lo[1] + j * geometry.spacing(1), 0.0};
}

FluidState GridState::node_state(int i, int j) const
{
    const std::size_t k = index(i, j);
    return {rho[k], {vx[k], vy[k], 0.0}, entropy[k], pressure[k]};
}

void GridState::refresh_pressure()
{
    pressure.resize(rho.size());
    for (std::size_t k = 0; k < rho.size(); ++k)
        pressure[k] = std::pow(rho[k], gamma) * std::exp(entropy[k]);
}

GridState make_grid_state(const GridGeometry& geometry, double gamma, double time, const InitialState& init)
{
    if (geometry.cells < 16)
        throw InvalidArgument("grid needs at least 16 cells per axis");
    if (!(gamma > 1.0))
        throw InvalidArgument("adiabatic exponent gamma must exceed 1");
    for (int a = 0; a < 2; ++a)
        if (!(geometry.hi[a] > geometry.lo[a]))
            throw InvalidArgument("grid box must have positive extent");

    GridState s;
    s.geometry = geometry;
    s.gamma = gamma;
    s.time = time;
    const std::size_t total = static_cast<std::size_t>(geometry.cells) * geometry.cells;
    s.rho.resize(total);
    s.vx.resize(total);
    s.vy.resize(total);
    s.entropy.resize(total);
    for (int j = 0; j < geometry.cells; ++j) {
        for (int i = 0; i < geometry.cells; ++i) {
            const FluidState f = init(s.node(i, j));
            if (!(f.rho > 0.0))
                throw InvalidArgument("initial density must be positive at every node");
            const std::size_t k = s.index(i, j);
            s.rho[k] = f.rho;
            s.vx[k] = f.vel[0];
            s.vy[k] = f.vel[1];
            s.entropy[k] = f.entropy;
        }
    }
    s.refresh_pressure();
    return s;
}

double max_stable_dt(const GridState& state, double cfl)
{
    double smax = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        const double c = std::sqrt(state.gamma * state.pressure[k] / state.rho[k]);
        const double v = std::hypot(state.vx[k], state.vy[k]);
        smax = std::max(smax, v + c);
    }
    const double h = std::min(state.geometry.spacing(0), state.geometry.spacing(1));
    return cfl * h / smax;
}

namespace {

// Fourth-order centered first derivative along one axis, written as
// differences of symmetric pairs so constants give exactly zero.
void derivative(const std::vector<double>& f, int n, int axis, double h, std::vector<double>& out)
{
    out.resize(f.size());
    const double inv = 1.0 / (12.0 * h);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            auto at = [&](int di) {
                const int ii = axis == 0 ? (i + di + n) % n : i;
                const int jj = axis == 1 ? (j + di + n) % n : j;
                return f[static_cast<std::size_t>(jj) * n + ii];
            };
            out[static_cast<std::size_t>(j) * n + i] =
                (8.0 * (at(1) - at(-1)) - (at(2) - at(-2))) * inv;
        }
    }
}

struct Fields {
    std::vector<double> rho, vx, vy, s;
};

Fields rhs(const Fields& u, const GridState& meta)
{
    const int n = meta.geometry.cells;
    const double hx = meta.geometry.spacing(0);
    const double hy = meta.geometry.spacing(1);
    const std::size_t total = u.rho.size();

    std::vector<double> p(total), mx(total), my(total);
    for (std::size_t k = 0; k < total; ++k) {
        p[k] = std::pow(u.rho[k], meta.gamma) * std::exp(u.s[k]);
        mx[k] = u.rho[k] * u.vx[k];
        my[k] = u.rho[k] * u.vy[k];
    }

    std::vector<double> dmx, dmy, dux, duy, dvx, dvy, dsx, dsy, dpx, dpy;
    derivative(mx, n, 0, hx, dmx);
    derivative(my, n, 1, hy, dmy);
    derivative(u.vx, n, 0, hx, dux);
    derivative(u.vx, n, 1, hy, duy);
    derivative(u.vy, n, 0, hx, dvx);
    derivative(u.vy, n, 1, hy, dvy);
    derivative(u.s, n, 0, hx, dsx);
    derivative(u.s, n, 1, hy, dsy);
    derivative(p, n, 0, hx, dpx);
    derivative(p, n, 1, hy, dpy);

    Fields r;
    r.rho.resize(total);
    r.vx.resize(total);
    r.vy.resize(total);
    r.s.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
        const double a = u.vx[k];
        const double b = u.vy[k];
        r.rho[k] = -(dmx[k] + dmy[k]);
        r.vx[k] = -(a * dux[k] + b * duy[k]) - dpx[k] / u.rho[k];
        r.vy[k] = -(a * dvx[k] + b * dvy[k]) - dpy[k] / u.rho[k];
        r.s[k] = -(a * dsx[k] + b * dsy[k]);
    }
    return r;
}

Fields axpy(const Fields& y, double c, const Fields& k)
{
    Fields out = y;
    for (std::size_t i = 0; i < y.rho.size(); ++i) {
        out.rho[i] += c * k.rho[i];
        out.vx[i] += c * k.vx[i];
        out.vy[i] += c * k.vy[i];
        out.s[i] += c * k.s[i];
    }
    return out;
}

void filter_field(std::vector<double>& f, int n, double alpha)
{
    const std::vector<double> src = f;
    for (int axis = 0; axis < 2; ++axis) {
        const std::vector<double> cur = axis == 0 ? src : f;
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                auto at = [&](int di) {
                    const int ii = axis == 0 ? (i + di + n) % n : i;
                    const int jj = axis == 1 ? (j + di + n) % n : j;
                    return cur[static_cast<std::size_t>(jj) * n + ii];
                };
                const double d6 = (at(-3) + at(3)) - 6.0 * (at(-2) + at(2)) + 15.0 * (at(-1) + at(1)) -
                                  20.0 * at(0);
                f[static_cast<std::size_t>(j) * n + i] = at(0) + alpha / 64.0 * d6;
            }
        }
    }
}

} // namespace

GridState step(const GridState& state, double dt, const StepOptions& options)
{
    if (!(dt > 0.0))
        throw SolverError("step: dt must be positive");
    const double limit = max_stable_dt(state, options.cfl);
    if (dt > limit * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "step: dt=" << dt << " violates the CFL bound " << limit;
        throw SolverError(os.str());
    }

    const Fields y{state.rho, state.vx, state.vy, state.entropy};
    const Fields k1 = rhs(y, state);
    const Fields k2 = rhs(axpy(y, 0.5 * dt, k1), state);
    const Fields k3 = rhs(axpy(y, 0.5 * dt, k2), state);
    const Fields k4 = rhs(axpy(y, dt, k3), state);

    GridState out = state;
    const double w = dt / 6.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        out.rho[i] = y.rho[i] + w * (k1.rho[i] + 2.0 * k2.rho[i] + 2.0 * k3.rho[i] + k4.rho[i]);
        out.vx[i] = y.vx[i] + w * (k1.vx[i] + 2.0 * k2.vx[i] + 2.0 * k3.vx[i] + k4.vx[i]);
        out.vy[i] = y.vy[i] + w * (k1.vy[i] + 2.0 * k2.vy[i] + 2.0 * k3.vy[i] + k4.vy[i]);
        out.entropy[i] = y.s[i] + w * (k1.s[i] + 2.0 * k2.s[i] + 2.0 * k3.s[i] + k4.s[i]);
    }
    if (options.filter_strength > 0.0) {
        const int n = state.geometry.cells;
        filter_field(out.rho, n, options.filter_strength);
        filter_field(out.vx, n, options.filter_strength);
        filter_field(out.vy, n, options.filter_strength);
        filter_field(out.entropy, n, options.filter_strength);
    }
    out.time = state.time + dt;

    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!std::isfinite(out.rho[i]) || !std::isfinite(out.vx[i]) || !std::isfinite(out.vy[i]) ||
            !std::isfinite(out.entropy[i]))
            throw SolverError("step: NaN or infinity in the updated state");
        if (!(out.rho[i] > 0.0))
            throw SolverError("step: density became non-positive");
    }
    out.refresh_pressure();
    return out;
}

double total_mass(const GridState& state)
{
    return pairwise_sum(state.rho) * state.geometry.spacing(0) * state.geometry.spacing(1);
}

SmoothnessReport smoothness_guard(const GridState& state, double threshold)
{
    const int n = state.geometry.cells;
    const double hx = state.geometry.spacing(0);
    const double hy = state.geometry.spacing(1);
    std::vector<double> rx, ry, ux, uy, vx, vy, px, py;
    derivative(state.rho, n, 0, hx, rx);
    derivative(state.rho, n, 1, hy, ry);
    derivative(state.vx, n, 0, hx, ux);
    derivative(state.vx, n, 1, hy, uy);
    derivative(state.vy, n, 0, hx, vx);
    derivative(state.vy, n, 1, hy, vy);
    derivative(state.pressure, n, 0, hx, px);
    derivative(state.pressure, n, 1, hy, py);

    double g = 0.0;
    for (std::size_t k = 0; k < state.size(); ++k) {
        g = std::max(g, std::hypot(rx[k], ry[k]));
        g = std::max(g, std::sqrt(ux[k] * ux[k] + uy[k] * uy[k] + vx[k] * vx[k] + vy[k] * vy[k]));
        g = std::max(g, std::hypot(px[k], py[k]));
    }
    return {g, g <= threshold};
}

namespace {

std::array<double, 4> cubic_weights(double f)
{
    return {-f * (f - 1.0) * (f - 2.0) / 6.0, (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0,
            -(f + 1.0) * f * (f - 2.0) / 2.0, (f + 1.0) * f * (f - 1.0) / 6.0};
}

bool inside_box(const GridGeometry& g, const Vec& x)
{
    return x[0] >= g.lo[0] && x[0] <= g.hi[0] && x[1] >= g.lo[1] && x[1] <= g.hi[1];
}

struct Raw {
    double rho, vx, vy, s;
};

Raw interpolate_raw(const GridState& state, const Vec& x)
{
    const GridGeometry& g = state.geometry;
    const double sx = (x[0] - g.lo[0]) / g.spacing(0);
    const double sy = (x[1] - g.lo[1]) / g.spacing(1);
    const double fx = std::floor(sx);
    const double fy = std::floor(sy);
    const int i0 = static_cast<int>(fx);
    const int j0 = static_cast<int>(fy);
    const auto wx = cubic_weights(sx - fx);
    const auto wy = cubic_weights(sy - fy);

    Raw r{0.0, 0.0, 0.0, 0.0};
    for (int b = 0; b < 4; ++b) {
        if (wy[b] == 0.0)
            continue;
        for (int a = 0; a < 4; ++a) {
            const double w = wx[a] * wy[b];
            if (w == 0.0)
                continue;
            const std::size_t k = state.index(i0 - 1 + a, j0 - 1 + b);
            r.rho += w * state.rho[k];
            r.vx += w * state.vx[k];
            r.vy += w * state.vy[k];
            r.s += w * state.entropy[k];
        }
    }
    return r;
}

} // namespace

FluidState interpolate(const GridState& state, const Vec& x)
{
    if (!inside_box(state.geometry, x))
        throw DomainError("grid interpolation outside the box");
    const Raw r = interpolate_raw(state, x);
    if (!(r.rho > 0.0))
        throw DomainError("interpolated density is non-positive");
    return FluidState::from_entropy(r.rho, {r.vx, r.vy, 0.0}, r.s, state.gamma);
}

EvolveResult evolve(const GridState& initial, double t_end, double dt, const StepOptions& options,
                    double guard_threshold)
{
    if (!(dt > 0.0))
        throw InvalidArgument("evolve: dt must be positive");
    EvolveResult result;
    result.history = std::make_shared<GridHistory>();
    result.history->snapshots.push_back(initial);
    result.max_grad = smoothness_guard(initial, guard_threshold).max_grad;

    GridState cur = initial;
    while (cur.time < t_end) {
        const double remaining = t_end - cur.time;
        // Land on t_end exactly instead of leaving a sliver step.
        const double h = remaining <= dt * (1.0 + 1e-9) ? remaining : dt;
        try {
            cur = step(cur, h, options);
        } catch (const SolverError& e) {
            result.smooth = false;
            result.message = e.what();
            break;
        }
        if (h == remaining)
            cur.time = t_end;
        const SmoothnessReport guard = smoothness_guard(cur, guard_threshold);
        result.max_grad = std::max(result.max_grad, guard.max_grad);
        result.history->snapshots.push_back(cur);
        if (!guard.ok) {
            result.smooth = false;
            std::ostringstream os;
            os << "smoothness lost at t=" << cur.time << " (max gradient " << guard.max_grad << ")";
            result.message = os.str();
            break;
        }
    }
    return result;
}

namespace {

class GridModel final : public FlowModel {
public:
    explicit GridModel(std::shared_ptr<const GridHistory> h) : history_(std::move(h))
    {
        for (const auto& s : history_->snapshots)
            times_.push_back(s.time);
    }

    FluidState state(double t, const Vec& x) const override
    {
        const auto& snaps = history_->snapshots;
        if (snaps.size() == 1)
            return interpolate(snaps.front(), x);

        // Bracketing interval, then up to four snapshots around it.
        const auto it = std::upper_bound(times_.begin(), times_.end(), t);
        std::ptrdiff_t k = std::distance(times_.begin(), it) - 1;
        k = std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(snaps.size()) - 2);
        std::ptrdiff_t first = k - 1;
        std::ptrdiff_t last = k + 2;
        const auto count = static_cast<std::ptrdiff_t>(snaps.size());
        if (first < 0) {
            last = std::min(count - 1, last - first);
            first = 0;
        }
        if (last > count - 1) {
            first = std::max<std::ptrdiff_t>(0, first - (last - (count - 1)));
            last = count - 1;
        }

        Raw acc{0.0, 0.0, 0.0, 0.0};
        for (std::ptrdiff_t a = first; a <= last; ++a) {
            double w = 1.0;
            for (std::ptrdiff_t b = first; b <= last; ++b)
                if (b != a)
                    w *= (t - times_[b]) / (times_[a] - times_[b]);
            if (w == 0.0)
                continue;
            const Raw r = interpolate_raw(snaps[a], x);
            acc.rho += w * r.rho;
            acc.vx += w * r.vx;
            acc.vy += w * r.vy;
            acc.s += w * r.s;
        }
        if (!(acc.rho > 0.0))
            throw DomainError("interpolated density is non-positive");
        return FluidState::from_entropy(acc.rho, {acc.vx, acc.vy, 0.0}, acc.s, snaps.front().gamma);
    }

    bool contains(double t, const Vec& x) const override
    {
        return t >= times_.front() && t <= times_.back() && inside_box(history_->snapshots.front().geometry, x);
    }

    TimeWindow window() const override { return {times_.front(), times_.back()}; }

private:
    std::shared_ptr<const GridHistory> history_;
    std::vector<double> times_;
};

} // namespace

FlowField make_grid_flow(std::shared_ptr<const GridHistory> history)
{
    if (!history || history->snapshots.empty())
        throw InvalidArgument("grid flow needs at least one snapshot");
    const GridState& first = history->snapshots.front();
    const double floor = *std::min_element(first.entropy.begin(), first.entropy.end());
    const double gamma = first.gamma;
    const auto& g = first.geometry;
    std::vector<double> params{static_cast<double>(g.cells), g.lo[0], g.lo[1], g.hi[0], g.hi[1]};
    return FlowField(FlowKind::grid, 2, gamma, floor, std::move(params),
                     std::make_shared<GridModel>(std::move(history)));
}

} // namespace lagvol
