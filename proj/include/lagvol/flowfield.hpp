#pragma once

#include "lagvol/vec.hpp"

#include <functional>
#include <limits>
#include <memory>
#include <vector>

namespace lagvol {

/// Pointwise state of the gas: density, velocity, entropy and pressure tied
/// together by the state equation P = rho^gamma * exp(S).
struct FluidState {
    double rho = 1.0;
    Vec vel{};
    double entropy = 0.0;
    double pressure = 1.0;

    static FluidState from_entropy(double rho, const Vec& vel, double entropy, double gamma);
    static FluidState from_pressure(double rho, const Vec& vel, double pressure, double gamma);
};

enum class FlowKind { constant, expansion, grid, synthetic };

const char* to_string(FlowKind kind);

struct TimeWindow {
    double begin = -std::numeric_limits<double>::infinity();
    double end = std::numeric_limits<double>::infinity();

    bool contains(double t) const { return t >= begin && t <= end; }
};

/// Backend of a FlowField. Implementations are immutable after construction.
class FlowModel {
public:
    virtual ~FlowModel() = default;
    virtual FluidState state(double t, const Vec& x) const = 0;
    virtual bool contains(double t, const Vec& x) const = 0;
    virtual TimeWindow window() const = 0;
};

/// A queryable smooth flow over space-time. Copies share the immutable model.
class FlowField {
public:
    FlowField(FlowKind kind, int dimension, double gamma, double entropy_floor,
              std::vector<double> parameters, std::shared_ptr<const FlowModel> model);

    FlowKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    double gamma() const { return gamma_; }
    double entropy_floor() const { return entropy_floor_; }
    const std::vector<double>& parameters() const { return parameters_; }
    TimeWindow window() const { return model_->window(); }

    bool contains(double t, const Vec& x) const { return model_->contains(t, x); }

    /// Throws DomainError outside the flow's space-time domain.
    FluidState eval(double t, const Vec& x) const;

private:
    FlowKind kind_;
    int dimension_;
    double gamma_;
    double entropy_floor_;
    std::vector<double> parameters_;
    std::shared_ptr<const FlowModel> model_;
};

/// Kind plus a flat parameter record:
///   constant:  (rho0, V0_1, ..., V0_n, P0)
///   expansion: (rho0, S0, t_c)
struct AnalyticFlowSpec {
    FlowKind kind = FlowKind::constant;
    int dimension = 2;
    double gamma = 1.4;
    std::vector<double> parameters;
};

FlowField make_analytic_flow(const AnalyticFlowSpec& spec);

/// Uniform state; the entropy is ln(P0 / rho0^gamma).
FlowField make_constant_flow(int dimension, double gamma, double rho0, const Vec& vel0, double p0);

/// Homogeneous expansion V = x / (t + t_c), rho = rho0 (t_c / (t + t_c))^n,
/// S = S0. A negative t_c gives the collapsing branch, valid for t < -t_c.
FlowField make_expansion_flow(int dimension, double gamma, double rho0, double s0, double t_c);

using StateFunction = std::function<FluidState(double t, const Vec& x)>;

/// Arbitrary user-supplied field. No Euler consistency is implied; used for
/// synthetic velocity fields in tests and randomized inequality checks.
FlowField make_synthetic_flow(int dimension, double gamma, double entropy_floor, StateFunction fn,
                              TimeWindow window = {});

FluidState eval_state(const FlowField& flow, double t, const Vec& x);

/// Centered-difference residuals of the momentum equations (n rows), the
/// continuity equation and the pressure transport equation, in that order.
std::vector<double> euler_residual(const FlowField& flow, double t, const Vec& x, double h);

} // namespace lagvol
