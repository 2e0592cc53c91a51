#include "lagvol/config.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/expr.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace lagvol {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::optional<double> to_number(std::string_view s)
{
    const std::string t = trim(s);
    double v = 0.0;
    const char* first = t.data();
    const char* last = t.data() + t.size();
    if (!t.empty() && t.front() == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || t.empty())
        return std::nullopt;
    return v;
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto p = s.find(sep, start);
        out.push_back(trim(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start)));
        if (p == std::string_view::npos)
            return out;
        start = p + 1;
    }
}

} // namespace

ConfigMap ConfigMap::parse(std::string_view text)
{
    ConfigMap cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const std::string t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string value = trim(std::string_view(t).substr(eq + 1));
        if (key.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        if (!cfg.values_.emplace(key, value).second)
            throw ConfigError("duplicate key '" + key + "'");
    }
    return cfg;
}

ConfigMap ConfigMap::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse(os.str());
}

const std::string& ConfigMap::raw(const std::string& key) const
{
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ConfigError("missing required key '" + key + "'");
    used_.insert(key);
    return it->second;
}

std::string ConfigMap::text(const std::string& key) const
{
    return raw(key);
}

std::string ConfigMap::text(const std::string& key, const std::string& fallback) const
{
    return has(key) ? raw(key) : fallback;
}

double ConfigMap::number(const std::string& key) const
{
    const auto v = to_number(raw(key));
    if (!v)
        throw ConfigError("key '" + key + "': expected a number, got '" + raw(key) + "'");
    return *v;
}

double ConfigMap::number(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

int ConfigMap::integer(const std::string& key) const
{
    const double v = number(key);
    if (v != static_cast<double>(static_cast<int>(v)))
        throw ConfigError("key '" + key + "': expected an integer");
    return static_cast<int>(v);
}

int ConfigMap::integer(const std::string& key, int fallback) const
{
    return has(key) ? integer(key) : fallback;
}

bool ConfigMap::flag(const std::string& key, bool fallback) const
{
    if (!has(key))
        return fallback;
    const std::string& v = raw(key);
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    throw ConfigError("key '" + key + "': expected true or false");
}

std::vector<double> ConfigMap::numbers(const std::string& key) const
{
    std::vector<double> out;
    for (const auto& part : split(raw(key), ',')) {
        const auto v = to_number(part);
        if (!v)
            throw ConfigError("key '" + key + "': bad list entry '" + part + "'");
        out.push_back(*v);
    }
    return out;
}

std::vector<double> ConfigMap::numbers(const std::string& key, std::vector<double> fallback) const
{
    return has(key) ? numbers(key) : fallback;
}

Vec ConfigMap::point(const std::string& key, int dimension) const
{
    const auto v = numbers(key);
    if (static_cast<int>(v.size()) != dimension)
        throw ConfigError("key '" + key + "': expected " + std::to_string(dimension) + " components");
    Vec p{};
    for (int i = 0; i < dimension; ++i)
        p[i] = v[i];
    return p;
}

void ConfigMap::reject_unused() const
{
    for (const auto& [key, value] : values_)
        if (!used_.count(key))
            throw ConfigError("unknown key '" + key + "'");
}

ScenarioConfig scenario_from_config(const ConfigMap& cfg)
{
    ScenarioConfig sc;
    sc.name = cfg.text("scenario.name", sc.name);
    sc.dimension = cfg.integer("dimension", 2);
    if (sc.dimension != 2 && sc.dimension != 3)
        throw ConfigError("key 'dimension': must be 2 or 3");
    sc.gamma = cfg.number("gamma", 1.4);
    if (!(sc.gamma > 1.0))
        throw ConfigError("key 'gamma': must exceed 1");
    const int n = sc.dimension;

    const std::string kind = cfg.text("flow.kind");
    if (kind == "constant") {
        sc.flow_kind = FlowKind::constant;
        const Vec v = cfg.point("flow.velocity", n);
        sc.flow_parameters.push_back(cfg.number("flow.rho0"));
        for (int i = 0; i < n; ++i)
            sc.flow_parameters.push_back(v[i]);
        sc.flow_parameters.push_back(cfg.number("flow.pressure"));
    } else if (kind == "expansion") {
        sc.flow_kind = FlowKind::expansion;
        sc.flow_parameters = {cfg.number("flow.rho0"), cfg.number("flow.entropy", 0.0), cfg.number("flow.t_c")};
    } else if (kind == "grid") {
        sc.flow_kind = FlowKind::grid;
        if (n != 2)
            throw ConfigError("key 'flow.kind': grid flows are two-dimensional");
        GridFlowConfig& g = sc.grid;
        g.geometry.cells = cfg.integer("grid.cells", 64);
        const Vec lo = cfg.point("grid.lo", 2);
        const Vec hi = cfg.point("grid.hi", 2);
        g.geometry.lo = {lo[0], lo[1]};
        g.geometry.hi = {hi[0], hi[1]};
        g.rho = cfg.text("grid.rho", g.rho);
        g.vx = cfg.text("grid.vx", g.vx);
        g.vy = cfg.text("grid.vy", g.vy);
        g.pressure = cfg.text("grid.pressure", g.pressure);
        g.dt = cfg.number("grid.dt", 0.0);
        g.cfl = cfg.number("grid.cfl", g.cfl);
        g.filter = cfg.number("grid.filter", g.filter);
        g.guard = cfg.number("grid.guard", g.guard);
    } else {
        throw ConfigError("key 'flow.kind': unknown flow kind '" + kind + "'");
    }

    VolumeShapeSpec& v = sc.volume;
    v.dimension = n;
    const std::string shape = cfg.text("volume.shape");
    if (shape == "ball" || shape == "disk") {
        v.shape = ShapeKind::ball;
        v.center = cfg.point("volume.center", n);
        v.radius = cfg.number("volume.radius");
    } else if (shape == "annulus" || shape == "shell") {
        v.shape = ShapeKind::annulus;
        v.center = cfg.point("volume.center", n);
        v.inner_radius = cfg.number("volume.inner_radius");
        v.outer_radius = cfg.number("volume.outer_radius");
    } else if (shape == "polygon") {
        v.shape = ShapeKind::polygon;
        for (const auto& vertex : split(cfg.text("volume.vertices"), ';')) {
            const auto xy = split(vertex, ',');
            const auto a = xy.size() == 2 ? to_number(xy[0]) : std::nullopt;
            const auto b = xy.size() == 2 ? to_number(xy[1]) : std::nullopt;
            if (!a || !b)
                throw ConfigError("key 'volume.vertices': expected 'x, y; x, y; ...'");
            v.vertices.push_back({*a, *b, 0.0});
        }
    } else {
        throw ConfigError("key 'volume.shape': unknown shape '" + shape + "'");
    }
    v.markers = cfg.integer("volume.markers", v.markers);
    v.quadrature.radial = cfg.integer("volume.radial", v.quadrature.radial);
    v.quadrature.angular = cfg.integer("volume.angular", v.quadrature.angular);
    v.quadrature.polar = cfg.integer("volume.polar", v.quadrature.polar);
    v.quadrature.triangle_order = cfg.integer("volume.triangle_order", v.quadrature.triangle_order);
    sc.resample = cfg.flag("volume.resample", false);

    sc.x0 = cfg.point("target.x0", n);
    sc.epsilon = cfg.number("target.epsilon");
    sc.q = cfg.number("criteria.q");
    sc.T = cfg.number("criteria.T");
    sc.M = cfg.number("criteria.M", 0.0);
    if (cfg.has("criteria.s0"))
        sc.s0 = cfg.number("criteria.s0");

    sc.dt = cfg.number("run.dt", sc.dt);
    sc.stride = cfg.integer("run.stride", sc.stride);
    sc.floor = cfg.number("run.floor", sc.floor);
    if (!(sc.dt > 0.0))
        throw ConfigError("key 'run.dt': must be positive");
    if (sc.stride < 1)
        throw ConfigError("key 'run.stride': must be at least 1");

    sc.out_dir = cfg.text("output.dir", "");
    const std::string fmt = cfg.text("output.format", "report");
    if (fmt == "csv")
        sc.format = OutputFormat::csv;
    else if (fmt == "report")
        sc.format = OutputFormat::report;
    else
        throw ConfigError("key 'output.format': expected csv or report");

    sc.verify_times = cfg.numbers("verify.times", {});
    sc.verify_h = cfg.number("verify.h", sc.verify_h);
    sc.lemma2_cases = cfg.integer("verify.lemma2_cases", sc.lemma2_cases);
    sc.oracle_cases = cfg.integer("verify.oracle_cases", sc.oracle_cases);

    sc.sweep_q = cfg.numbers("sweep.q", {});
    sc.sweep_epsilon = cfg.numbers("sweep.epsilon", {});

    cfg.reject_unused();

    // Attainment preconditions that can be judged without building the volume.
    const double q_max = -n - 2.0 / (sc.gamma - 1.0);
    if (!(sc.q < q_max))
        throw ConfigError("key 'criteria.q': must be below -n - 2/(gamma-1) = " + std::to_string(q_max));
    if (!(sc.epsilon > 0.0))
        throw ConfigError("key 'target.epsilon': must be positive");
    if (!(sc.M >= 0.0))
        throw ConfigError("key 'criteria.M': must be non-negative");
    if (!(sc.T > 0.0))
        throw ConfigError("key 'criteria.T': must be positive");
    for (double q : sc.sweep_q)
        if (!(q < q_max))
            throw ConfigError("key 'sweep.q': entries must be below -n - 2/(gamma-1)");
    return sc;
}

ScenarioConfig load_scenario(const std::filesystem::path& path)
{
    return scenario_from_config(ConfigMap::load(path));
}

BuiltFlow build_flow(const ScenarioConfig& cfg)
{
    if (cfg.flow_kind != FlowKind::grid) {
        AnalyticFlowSpec spec{cfg.flow_kind, cfg.dimension, cfg.gamma, cfg.flow_parameters};
        return {make_analytic_flow(spec), true, 0.0, {}};
    }
    const GridFlowConfig& g = cfg.grid;
    const Expression rho = Expression::parse(g.rho);
    const Expression vx = Expression::parse(g.vx);
    const Expression vy = Expression::parse(g.vy);
    const Expression p = Expression::parse(g.pressure);
    const double gamma = cfg.gamma;
    const GridState init = make_grid_state(g.geometry, gamma, 0.0, [&](const Vec& x) {
        return FluidState::from_pressure(rho(x[0], x[1]), {vx(x[0], x[1]), vy(x[0], x[1]), 0.0}, p(x[0], x[1]),
                                         gamma);
    });
    const double dt = g.dt > 0.0 ? g.dt : 0.5 * max_stable_dt(init, g.cfl);
    const EvolveResult r = evolve(init, cfg.T, dt, {g.cfl, g.filter}, g.guard);
    return {make_grid_flow(r.history), r.smooth, r.max_grad, r.message};
}

} // namespace lagvol
