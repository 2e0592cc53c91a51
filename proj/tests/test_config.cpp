#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lagvol/config.hpp"
#include "lagvol/errors.hpp"
#include "lagvol/expr.hpp"
#include "lagvol/report.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

using namespace lagvol;

namespace {

const char* base_config = R"(
# comment line
scenario.name = demo
dimension = 2
gamma = 1.4
flow.kind = constant
flow.rho0 = 1
flow.velocity = -1, 0   # trailing comment
flow.pressure = 1
volume.shape = disk
volume.center = 3, 0
volume.radius = 1
target.x0 = 0, 0
target.epsilon = 0.5
criteria.q = -8
criteria.T = 5
criteria.M = 10
)";

std::string error_of(const std::string& text)
{
    try {
        scenario_from_config(ConfigMap::parse(text));
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("config round trip")
{
    const ScenarioConfig c = scenario_from_config(ConfigMap::parse(base_config));
    CHECK(c.name == "demo");
    CHECK(c.flow_kind == FlowKind::constant);
    CHECK(c.flow_parameters == std::vector<double>{1, -1, 0, 1});
    CHECK(c.volume.shape == ShapeKind::ball);
    CHECK(c.volume.center[0] == 3);
    CHECK(c.epsilon == 0.5);
    CHECK(c.q == -8);
    CHECK(c.M == 10);
    CHECK_FALSE(c.s0.has_value());
    CHECK(c.dt == 1e-3);
    CHECK(c.format == OutputFormat::report);
}

TEST_CASE("config errors name the key")
{
    CHECK(error_of(std::string(base_config) + "volume.radiuss = 2\n").find("volume.radiuss") != std::string::npos);
    CHECK(error_of(std::string(base_config) + "run.dt = fast\n").find("run.dt") != std::string::npos);
    CHECK(error_of(std::string(base_config) + "criteria.q = -8\n").find("criteria.q") != std::string::npos);
    CHECK(error_of(std::string(base_config) + "output.format = xml\n").find("output.format") != std::string::npos);
    CHECK(error_of("dimension = 2\n").find("flow.kind") != std::string::npos);
    CHECK(error_of("this line has no equals sign\n").find("line 1") != std::string::npos);
}

TEST_CASE("preconditions checked at load time")
{
    std::string text = base_config;
    text.replace(text.find("criteria.q = -8"), 15, "criteria.q = -7");
    CHECK(error_of(text).find("criteria.q") != std::string::npos);
    text = base_config;
    text.replace(text.find("criteria.M = 10"), 15, "criteria.M = -1");
    CHECK(error_of(text).find("criteria.M") != std::string::npos);
}

TEST_CASE("polygon vertices and grid keys")
{
    const std::string text = R"(
flow.kind = grid
grid.lo = -4, -4
grid.hi = 4, 4
grid.rho = 1 + 0.1 * sin(pi * x / 4)
volume.shape = polygon
volume.vertices = 1, 1; 2, 1; 2, 2; 1, 2
target.x0 = 0, 0
target.epsilon = 0.5
criteria.q = -8
criteria.T = 1
)";
    const ScenarioConfig c = scenario_from_config(ConfigMap::parse(text));
    CHECK(c.flow_kind == FlowKind::grid);
    CHECK(c.grid.geometry.lo[0] == -4);
    CHECK(c.volume.vertices.size() == 4);
    CHECK(c.volume.vertices[2][1] == 2);
}

TEST_CASE("expressions")
{
    const Expression e = Expression::parse("1 + 0.1 * sin(pi * x / 4) - y^2 / 2");
    CHECK(e(2.0, 1.0) == doctest::Approx(1.1 - 0.5));
    CHECK(Expression::parse("-x^2")(3, 0) == doctest::Approx(-9));
    CHECK(Expression::parse("2^3^2")(0, 0) == doctest::Approx(512));
    CHECK(Expression::parse("exp(log(3)) + sqrt(16) + abs(-2)")(0, 0) == doctest::Approx(9));
    CHECK_THROWS_AS(Expression::parse("1 +"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("foo(x)"), ConfigError);
    CHECK_THROWS_AS(Expression::parse("(x"), ConfigError);
}

TEST_CASE("numbers are written with round-trip precision")
{
    for (double v : {0.1, 1.0 / 3.0, -1.030835089459151, 1e-300, 6.02214076e23}) {
        const std::string s = format_number(v);
        CHECK(std::stod(s) == v);
        CHECK(s.find(',') == std::string::npos);
    }
    CHECK(format_number(1.5) == "1.5");
}

TEST_CASE("series CSV schema")
{
    SeriesRow r;
    r.s.t = 0.5;
    r.s.m = 1;
    r.dist = 2;
    std::ostringstream os;
    write_series_csv(os, {r, r});
    std::istringstream in(os.str());
    std::string header, line;
    std::getline(in, header);
    CHECK(header == "t,m,E,G,F,I1,I2,I3,I4,reg,dist,Qq");
    std::getline(in, line);
    CHECK(line == "0.5,1,0,0,0,0,0,0,0,0,2,0");
}
