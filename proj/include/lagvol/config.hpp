#pragma once

#include "lagvol/flowfield.hpp"
#include "lagvol/matvol.hpp"
#include "lagvol/solver.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace lagvol {

/// Flat `key = value` text with dotted keys and `#` comments. Every key must
/// be consumed by the reader; leftovers are reported as unknown.
class ConfigMap {
public:
    static ConfigMap parse(std::string_view text);
    static ConfigMap load(const std::filesystem::path& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::string text(const std::string& key) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    int integer(const std::string& key) const;
    int integer(const std::string& key, int fallback) const;
    bool flag(const std::string& key, bool fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
    Vec point(const std::string& key, int dimension) const;

    /// Throws ConfigError naming the first key that was never read.
    void reject_unused() const;

private:
    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;

    const std::string& raw(const std::string& key) const;
};

struct GridFlowConfig {
    GridGeometry geometry;
    std::string rho = "1";
    std::string vx = "0";
    std::string vy = "0";
    std::string pressure = "1";
    double dt = 0.0; // 0 picks a CFL-limited step
    double cfl = 0.4;
    double filter = 0.0;
    double guard = 1e3;
};

enum class OutputFormat { csv, report };

/// Everything a `criteria`, `run`, `verify` or `sweep` invocation needs.
struct ScenarioConfig {
    std::string name = "scenario";
    int dimension = 2;
    double gamma = 1.4;

    FlowKind flow_kind = FlowKind::constant;
    std::vector<double> flow_parameters;
    GridFlowConfig grid;

    VolumeShapeSpec volume;
    bool resample = false;

    Vec x0{};
    double epsilon = 0.5;
    double q = -8.0;
    double T = 1.0;
    double M = 0.0;
    std::optional<double> s0;

    double dt = 1e-3;
    int stride = 1;
    double floor = 1e-9;

    std::string out_dir;
    OutputFormat format = OutputFormat::report;

    std::vector<double> verify_times;
    double verify_h = 1e-4;
    int lemma2_cases = 100;
    int oracle_cases = 200;

    std::vector<double> sweep_q;
    std::vector<double> sweep_epsilon;
};

ScenarioConfig scenario_from_config(const ConfigMap& cfg);
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct BuiltFlow {
    FlowField flow;
    bool smooth = true;
    double max_grad = 0.0;
    std::string message;
};

/// Analytic flows directly; grid flows by running the solver to T.
BuiltFlow build_flow(const ScenarioConfig& cfg);

} // namespace lagvol
