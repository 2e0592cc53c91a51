#pragma once

#include "lagvol/flowfield.hpp"
#include "lagvol/vec.hpp"

#include <array>
#include <functional>
#include <vector>

namespace lagvol {

enum class ShapeKind { ball, annulus, polygon };

const char* to_string(ShapeKind kind);

struct QuadratureRule {
    int radial = 24;        // Gauss points across the radius (disk, annulus, ball, shell)
    int angular = 128;      // uniform azimuthal points
    int polar = 24;         // Gauss points in cos(theta), three dimensions only
    int triangle_order = 8; // collapsed Gauss order per triangle, polygons only
};

/// Initial shape of a material volume. `ball` is a disk in two dimensions,
/// `annulus` a spherical shell in three. Polygons are two-dimensional.
struct VolumeShapeSpec {
    ShapeKind shape = ShapeKind::ball;
    int dimension = 2;
    Vec center{};
    double radius = 1.0;
    double inner_radius = 1.0;
    double outer_radius = 2.0;
    std::vector<Vec> vertices;
    // Markers per boundary loop in two dimensions; minimum vertex count per
    // closed surface in three.
    int markers = 256;
    QuadratureRule quadrature;
};

/// The point the boundary is expected to approach and the neighborhood radius.
struct Target {
    Vec x0{};
    double epsilon = 0.0;
};

struct SurfaceMesh {
    std::vector<Vec> vertices;
    std::vector<std::array<int, 3>> triangles;
};

/// A region transported by the flow. The boundary is carried by markers
/// (closed polygons with the region on their left in two dimensions, an
/// outward-wound triangle mesh in three); interior quadrature nodes carry
/// their share of the initial mass.
struct MaterialVolume {
    int dimension = 2;
    double time = 0.0;
    Vec x0{};
    double epsilon = 0.0;

    std::vector<std::vector<Vec>> loops;
    SurfaceMesh surface;

    std::vector<Vec> nodes;
    std::vector<double> mass; // rho0(y) * w(y), fixed for the life of the volume
    std::vector<double> rho0;
};

/// One straight boundary element: segment (2-D) or triangle (3-D).
struct BoundaryElement {
    Vec midpoint;
    Vec normal; // outward unit normal
    double measure;
};

/// Builds markers and mass-weighted quadrature nodes at the flow's time 0.
/// Throws GeometryError when x0 lies inside the shape or the boundary is
/// within epsilon of x0.
MaterialVolume init_volume(const VolumeShapeSpec& spec, const FlowField& flow, const Target& target,
                           double time = 0.0);

/// Union of disjoint volumes sharing dimension, time and target.
MaterialVolume merge_volumes(const MaterialVolume& a, const MaterialVolume& b);

/// Moves every marker and node by RK4 on dX/dt = V(t, X) with steps of at
/// most dt. Mass weights are unchanged. Throws GeometryError if a boundary
/// loop self-intersects afterwards.
MaterialVolume advect(const MaterialVolume& vol, const FlowField& flow, double t_to, double dt);

/// Advects only the boundary markers; used for event refinement.
MaterialVolume advect_boundary(const MaterialVolume& vol, const FlowField& flow, double t_to, double dt);

using PointFunction = std::function<double(const Vec& x)>;
using StateIntegrand = std::function<double(const Vec& x, const FluidState& s)>;
using NormalFunction = std::function<double(const Vec& x, const Vec& normal)>;
using NormalStateFunction = std::function<double(const Vec& x, const Vec& normal, const FluidState& s)>;

/// sum f(X) * mass weight: the integral of f * rho over the current volume.
double volume_integral_mass(const MaterialVolume& vol, const PointFunction& f);
double volume_integral_mass(const MaterialVolume& vol, const FlowField& flow, const StateIntegrand& f);

/// sum g(X) * mass weight / rho(t, X): the plain integral of g.
double volume_integral_plain(const MaterialVolume& vol, const StateIntegrand& g, const FlowField& flow);

/// Midpoint rule over boundary elements with outward unit normals.
double surface_integral(const MaterialVolume& vol, const NormalFunction& h);
double surface_integral(const MaterialVolume& vol, const FlowField& flow, const NormalStateFunction& h);

/// Distance from the boundary to x0.
double boundary_distance(const MaterialVolume& vol);

std::vector<BoundaryElement> boundary_elements(const MaterialVolume& vol);

/// True when p lies inside the region (winding / solid-angle test).
bool contains_point(const MaterialVolume& vol, const Vec& p);

/// Signed area of a closed polygon, positive for counter-clockwise.
double signed_area(const std::vector<Vec>& loop);

/// Any pair of non-adjacent segments of any loop touching or crossing.
bool self_intersecting(const std::vector<std::vector<Vec>>& loops);

/// Redistributes each loop's markers uniformly in arc length (2-D only).
/// Interior mass nodes are never touched.
MaterialVolume resample_markers(const MaterialVolume& vol);

} // namespace lagvol
