#include "lagvol/matvol.hpp"

#include "lagvol/errors.hpp"
#include "lagvol/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace lagvol {

const char* to_string(ShapeKind kind)
{
    switch (kind) {
    case ShapeKind::ball: return "ball";
    case ShapeKind::annulus: return "annulus";
    case ShapeKind::polygon: return "polygon";
    }
    return "unknown";
}

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::vector<Vec> circle_loop(const Vec& c, double r, int count, bool ccw)
{
    std::vector<Vec> loop(count);
    for (int k = 0; k < count; ++k) {
        const double a = two_pi * k / count;
        const double s = ccw ? std::sin(a) : -std::sin(a);
        loop[k] = {c[0] + r * std::cos(a), c[1] + r * s, 0.0};
    }
    return loop;
}

// Unit icosphere with at least `min_vertices` vertices, outward winding.
SurfaceMesh unit_icosphere(int min_vertices)
{
    const double p = (1.0 + std::sqrt(5.0)) / 2.0;
    SurfaceMesh m;
    m.vertices = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                  {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
    for (auto& v : m.vertices)
        v = (1.0 / norm(v)) * v;
    m.triangles = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                   {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
                   {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};

    while (static_cast<int>(m.vertices.size()) < min_vertices) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            const auto it = midpoint.find(key);
            if (it != midpoint.end())
                return it->second;
            Vec v = 0.5 * (m.vertices[a] + m.vertices[b]);
            v = (1.0 / norm(v)) * v;
            m.vertices.push_back(v);
            const int idx = static_cast<int>(m.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        next.reserve(m.triangles.size() * 4);
        for (const auto& t : m.triangles) {
            const int ab = mid(t[0], t[1]);
            const int bc = mid(t[1], t[2]);
            const int ca = mid(t[2], t[0]);
            next.push_back({t[0], ab, ca});
            next.push_back({t[1], bc, ab});
            next.push_back({t[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.triangles = std::move(next);
    }
    // Enforce outward winding; the sphere is convex about the origin.
    for (auto& t : m.triangles) {
        const Vec& a = m.vertices[t[0]];
        const Vec nrm = cross(m.vertices[t[1]] - a, m.vertices[t[2]] - a);
        if (dot(nrm, a + m.vertices[t[1]] + m.vertices[t[2]]) < 0.0)
            std::swap(t[1], t[2]);
    }
    return m;
}

void append_sphere(SurfaceMesh& out, const Vec& c, double r, int min_vertices, bool outward)
{
    const SurfaceMesh unit = unit_icosphere(min_vertices);
    const int base = static_cast<int>(out.vertices.size());
    for (const auto& v : unit.vertices)
        out.vertices.push_back(c + r * v);
    for (auto t : unit.triangles) {
        if (!outward)
            std::swap(t[1], t[2]);
        out.triangles.push_back({base + t[0], base + t[1], base + t[2]});
    }
}

double cross2(const Vec& o, const Vec& a, const Vec& b)
{
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool point_in_triangle2(const Vec& p, const Vec& a, const Vec& b, const Vec& c)
{
    return cross2(a, b, p) >= 0.0 && cross2(b, c, p) >= 0.0 && cross2(c, a, p) >= 0.0;
}

// Ear clipping of a simple counter-clockwise polygon.
std::vector<std::array<Vec, 3>> triangulate(const std::vector<Vec>& poly)
{
    std::vector<int> idx(poly.size());
    for (std::size_t i = 0; i < poly.size(); ++i)
        idx[i] = static_cast<int>(i);
    std::vector<std::array<Vec, 3>> tris;
    std::size_t guard = 0;
    while (idx.size() > 3) {
        bool clipped = false;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            const Vec& a = poly[idx[(i + idx.size() - 1) % idx.size()]];
            const Vec& b = poly[idx[i]];
            const Vec& c = poly[idx[(i + 1) % idx.size()]];
            if (cross2(a, b, c) <= 0.0)
                continue;
            bool ear = true;
            for (std::size_t j = 0; j < idx.size() && ear; ++j) {
                const Vec& p = poly[idx[j]];
                if (&p == &a || &p == &b || &p == &c)
                    continue;
                if (point_in_triangle2(p, a, b, c))
                    ear = false;
            }
            if (!ear)
                continue;
            tris.push_back({a, b, c});
            idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(i));
            clipped = true;
            break;
        }
        if (!clipped || ++guard > poly.size() * poly.size())
            throw GeometryError("polygon triangulation failed (degenerate polygon?)");
    }
    tris.push_back({poly[idx[0]], poly[idx[1]], poly[idx[2]]});
    return tris;
}

struct NodeSet {
    std::vector<Vec> nodes;
    std::vector<double> weights;
};

NodeSet radial_nodes_2d(const Vec& c, double r_in, double r_out, const QuadratureRule& q)
{
    NodeSet s;
    const GaussRule gr = gauss_legendre(q.radial, r_in, r_out);
    for (int i = 0; i < q.radial; ++i) {
        const double r = gr.nodes[i];
        const double w = gr.weights[i] * r * two_pi / q.angular;
        for (int k = 0; k < q.angular; ++k) {
            // Half-step azimuthal offset keeps nodes off the marker rays.
            const double a = two_pi * (k + 0.5) / q.angular;
            s.nodes.push_back({c[0] + r * std::cos(a), c[1] + r * std::sin(a), 0.0});
            s.weights.push_back(w);
        }
    }
    return s;
}

NodeSet radial_nodes_3d(const Vec& c, double r_in, double r_out, const QuadratureRule& q)
{
    NodeSet s;
    const GaussRule gr = gauss_legendre(q.radial, r_in, r_out);
    const GaussRule gm = gauss_legendre(q.polar);
    for (int i = 0; i < q.radial; ++i) {
        const double r = gr.nodes[i];
        for (int j = 0; j < q.polar; ++j) {
            const double mu = gm.nodes[j];
            const double st = std::sqrt(1.0 - mu * mu);
            const double w = gr.weights[i] * r * r * gm.weights[j] * two_pi / q.angular;
            for (int k = 0; k < q.angular; ++k) {
                const double a = two_pi * (k + 0.5) / q.angular;
                s.nodes.push_back({c[0] + r * st * std::cos(a), c[1] + r * st * std::sin(a), c[2] + r * mu});
                s.weights.push_back(w);
            }
        }
    }
    return s;
}

NodeSet polygon_nodes(const std::vector<Vec>& poly, int order)
{
    NodeSet s;
    const GaussRule g = gauss_legendre(order, 0.0, 1.0);
    for (const auto& t : triangulate(poly)) {
        const double twice_area = cross2(t[0], t[1], t[2]);
        // Collapsed map x = A + u (B - A) + u v (C - B), Jacobian 2|T| u.
        for (int i = 0; i < order; ++i) {
            const double u = g.nodes[i];
            for (int j = 0; j < order; ++j) {
                const double v = g.nodes[j];
                s.nodes.push_back(t[0] + u * (t[1] - t[0]) + (u * v) * (t[2] - t[1]));
                s.weights.push_back(g.weights[i] * g.weights[j] * twice_area * u);
            }
        }
    }
    return s;
}

std::vector<Vec> polygon_markers(const std::vector<Vec>& poly, int markers)
{
    double perimeter = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        perimeter += norm(poly[(i + 1) % poly.size()] - poly[i]);
    std::vector<Vec> loop;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec& a = poly[i];
        const Vec& b = poly[(i + 1) % poly.size()];
        const int pieces = std::max(1, static_cast<int>(std::lround(markers * norm(b - a) / perimeter)));
        for (int k = 0; k < pieces; ++k)
            loop.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
    }
    return loop;
}

// Closest point on triangle abc to p (Ericson, Real-Time Collision Detection).
Vec closest_on_triangle(const Vec& p, const Vec& a, const Vec& b, const Vec& c)
{
    const Vec ab = b - a, ac = c - a, ap = p - a;
    const double d1 = dot(ab, ap), d2 = dot(ac, ap);
    if (d1 <= 0.0 && d2 <= 0.0)
        return a;
    const Vec bp = p - b;
    const double d3 = dot(ab, bp), d4 = dot(ac, bp);
    if (d3 >= 0.0 && d4 <= d3)
        return b;
    const double vc = d1 * d4 - d3 * d2;
    if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0)
        return a + (d1 / (d1 - d3)) * ab;
    const Vec cp = p - c;
    const double d5 = dot(ab, cp), d6 = dot(ac, cp);
    if (d6 >= 0.0 && d5 <= d6)
        return c;
    const double vb = d5 * d2 - d1 * d6;
    if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0)
        return a + (d2 / (d2 - d6)) * ac;
    const double va = d3 * d6 - d5 * d4;
    if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0)
        return b + ((d4 - d3) / ((d4 - d3) + (d5 - d6))) * (c - b);
    const double denom = 1.0 / (va + vb + vc);
    return a + (vb * denom) * ab + (vc * denom) * ac;
}

double segment_distance(const Vec& p, const Vec& a, const Vec& b)
{
    const Vec ab = b - a;
    const double len2 = norm2(ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + t * ab));
}

bool segments_touch(const Vec& p1, const Vec& p2, const Vec& q1, const Vec& q2)
{
    const double d1 = cross2(q1, q2, p1);
    const double d2 = cross2(q1, q2, p2);
    const double d3 = cross2(p1, p2, q1);
    const double d4 = cross2(p1, p2, q2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    auto on_seg = [](const Vec& a, const Vec& b, const Vec& p) {
        return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
               p[1] <= std::max(a[1], b[1]);
    };
    return (d1 == 0 && on_seg(q1, q2, p1)) || (d2 == 0 && on_seg(q1, q2, p2)) ||
           (d3 == 0 && on_seg(p1, p2, q1)) || (d4 == 0 && on_seg(p1, p2, q2));
}

std::vector<Vec*> all_points(MaterialVolume& v)
{
    std::vector<Vec*> pts;
    for (auto& loop : v.loops)
        for (auto& p : loop)
            pts.push_back(&p);
    for (auto& p : v.surface.vertices)
        pts.push_back(&p);
    return pts;
}

void rk4_points(std::vector<Vec*>& pts, const FlowField& flow, double t0, double t1, double dt)
{
    if (!(dt > 0.0))
        throw InvalidArgument("advect: dt must be positive");
    const double span = t1 - t0;
    const auto steps = static_cast<long>(std::ceil(span / dt - 1e-9));
    const double h = span / static_cast<double>(std::max(1L, steps));
    for (long s = 0; s < std::max(1L, steps); ++s) {
        const double t = t0 + s * h;
        for (Vec* p : pts) {
            const Vec x = *p;
            const Vec k1 = flow.eval(t, x).vel;
            const Vec k2 = flow.eval(t + 0.5 * h, x + (0.5 * h) * k1).vel;
            const Vec k3 = flow.eval(t + 0.5 * h, x + (0.5 * h) * k2).vel;
            const Vec k4 = flow.eval(t + h, x + h * k3).vel;
            *p = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
    }
}

} // namespace

double signed_area(const std::vector<Vec>& loop)
{
    double a = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec& p = loop[i];
        const Vec& q = loop[(i + 1) % loop.size()];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return 0.5 * a;
}

bool self_intersecting(const std::vector<std::vector<Vec>>& loops)
{
    struct Seg {
        Vec a, b;
        double xmin, xmax;
        int loop, index, size;
    };
    std::vector<Seg> segs;
    for (std::size_t l = 0; l < loops.size(); ++l) {
        const auto& loop = loops[l];
        const int m = static_cast<int>(loop.size());
        for (int i = 0; i < m; ++i) {
            const Vec& a = loop[i];
            const Vec& b = loop[(i + 1) % m];
            segs.push_back({a, b, std::min(a[0], b[0]), std::max(a[0], b[0]), static_cast<int>(l), i, m});
        }
    }
    std::sort(segs.begin(), segs.end(), [](const Seg& s, const Seg& t) { return s.xmin < t.xmin; });
    for (std::size_t i = 0; i < segs.size(); ++i) {
        for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= segs[i].xmax; ++j) {
            const Seg& s = segs[i];
            const Seg& t = segs[j];
            if (s.loop == t.loop) {
                const int d = std::abs(s.index - t.index);
                if (d == 1 || d == s.size - 1)
                    continue; // neighbours share an endpoint
            }
            if (std::max(std::min(s.a[1], s.b[1]), std::min(t.a[1], t.b[1])) >
                std::min(std::max(s.a[1], s.b[1]), std::max(t.a[1], t.b[1])))
                continue;
            if (segments_touch(s.a, s.b, t.a, t.b))
                return true;
        }
    }
    return false;
}

std::vector<BoundaryElement> boundary_elements(const MaterialVolume& vol)
{
    std::vector<BoundaryElement> out;
    if (vol.dimension == 2) {
        for (const auto& loop : vol.loops) {
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Vec& a = loop[i];
                const Vec& b = loop[(i + 1) % loop.size()];
                const Vec d = b - a;
                const double len = norm(d);
                if (!(len > 0.0))
                    throw GeometryError("degenerate boundary segment (zero length)");
                out.push_back({0.5 * (a + b), {d[1] / len, -d[0] / len, 0.0}, len});
            }
        }
    } else {
        for (const auto& t : vol.surface.triangles) {
            const Vec& a = vol.surface.vertices[t[0]];
            const Vec& b = vol.surface.vertices[t[1]];
            const Vec& c = vol.surface.vertices[t[2]];
            const Vec nrm = cross(b - a, c - a);
            const double twice = norm(nrm);
            if (!(twice > 0.0))
                throw GeometryError("degenerate boundary triangle (zero area)");
            out.push_back({(1.0 / 3.0) * (a + b + c), (1.0 / twice) * nrm, 0.5 * twice});
        }
    }
    return out;
}

bool contains_point(const MaterialVolume& vol, const Vec& p)
{
    if (vol.dimension == 2) {
        int winding = 0;
        for (const auto& loop : vol.loops) {
            for (std::size_t i = 0; i < loop.size(); ++i) {
                const Vec& a = loop[i];
                const Vec& b = loop[(i + 1) % loop.size()];
                if (a[1] <= p[1]) {
                    if (b[1] > p[1] && cross2(a, b, p) > 0.0)
                        ++winding;
                } else if (b[1] <= p[1] && cross2(a, b, p) < 0.0) {
                    --winding;
                }
            }
        }
        return winding != 0;
    }
    double omega = 0.0;
    for (const auto& t : vol.surface.triangles) {
        const Vec ra = vol.surface.vertices[t[0]] - p;
        const Vec rb = vol.surface.vertices[t[1]] - p;
        const Vec rc = vol.surface.vertices[t[2]] - p;
        const double la = norm(ra), lb = norm(rb), lc = norm(rc);
        const double num = dot(ra, cross(rb, rc));
        const double den = la * lb * lc + dot(ra, rb) * lc + dot(ra, rc) * lb + dot(rb, rc) * la;
        omega += 2.0 * std::atan2(num, den);
    }
    return std::abs(omega / (4.0 * std::numbers::pi)) > 0.5;
}

double boundary_distance(const MaterialVolume& vol)
{
    double d = std::numeric_limits<double>::infinity();
    if (vol.dimension == 2) {
        for (const auto& loop : vol.loops)
            for (std::size_t i = 0; i < loop.size(); ++i)
                d = std::min(d, segment_distance(vol.x0, loop[i], loop[(i + 1) % loop.size()]));
    } else {
        for (const auto& t : vol.surface.triangles) {
            const Vec c = closest_on_triangle(vol.x0, vol.surface.vertices[t[0]], vol.surface.vertices[t[1]],
                                              vol.surface.vertices[t[2]]);
            d = std::min(d, norm(vol.x0 - c));
        }
    }
    return d;
}

MaterialVolume init_volume(const VolumeShapeSpec& spec, const FlowField& flow, const Target& target,
                           double time)
{
    const int n = spec.dimension;
    if (n != 2 && n != 3)
        throw InvalidArgument("volume dimension must be 2 or 3");
    if (n != flow.dimension())
        throw InvalidArgument("volume and flow dimensions differ");
    if (spec.markers < 64)
        throw InvalidArgument("marker count must be at least 64");
    if (!(target.epsilon >= 0.0))
        throw InvalidArgument("epsilon must be non-negative");
    const QuadratureRule& q = spec.quadrature;
    if (q.radial < 1 || q.angular < 3 || q.polar < 1 || q.triangle_order < 1)
        throw InvalidArgument("invalid quadrature rule");

    MaterialVolume vol;
    vol.dimension = n;
    vol.time = time;
    vol.x0 = target.x0;
    vol.epsilon = target.epsilon;
    if (n == 2)
        vol.x0[2] = 0.0;

    NodeSet nodes;
    switch (spec.shape) {
    case ShapeKind::ball:
        if (!(spec.radius > 0.0))
            throw InvalidArgument("radius must be positive");
        if (n == 2) {
            vol.loops.push_back(circle_loop(spec.center, spec.radius, spec.markers, true));
            nodes = radial_nodes_2d(spec.center, 0.0, spec.radius, q);
        } else {
            append_sphere(vol.surface, spec.center, spec.radius, spec.markers, true);
            nodes = radial_nodes_3d(spec.center, 0.0, spec.radius, q);
        }
        break;
    case ShapeKind::annulus:
        if (!(spec.inner_radius > 0.0) || !(spec.outer_radius > spec.inner_radius))
            throw InvalidArgument("annulus needs 0 < inner radius < outer radius");
        if (n == 2) {
            vol.loops.push_back(circle_loop(spec.center, spec.outer_radius, spec.markers, true));
            vol.loops.push_back(circle_loop(spec.center, spec.inner_radius, spec.markers, false));
            nodes = radial_nodes_2d(spec.center, spec.inner_radius, spec.outer_radius, q);
        } else {
            append_sphere(vol.surface, spec.center, spec.outer_radius, spec.markers, true);
            append_sphere(vol.surface, spec.center, spec.inner_radius, spec.markers, false);
            nodes = radial_nodes_3d(spec.center, spec.inner_radius, spec.outer_radius, q);
        }
        break;
    case ShapeKind::polygon: {
        if (n != 2)
            throw InvalidArgument("polygon shapes are two-dimensional");
        if (spec.vertices.size() < 3)
            throw InvalidArgument("polygon needs at least three vertices");
        std::vector<Vec> poly = spec.vertices;
        for (auto& v : poly)
            v[2] = 0.0;
        const double area = signed_area(poly);
        if (area == 0.0)
            throw GeometryError("polygon has zero area");
        if (area < 0.0)
            std::reverse(poly.begin(), poly.end());
        if (self_intersecting({poly}))
            throw GeometryError("polygon is self-intersecting");
        vol.loops.push_back(polygon_markers(poly, spec.markers));
        nodes = polygon_nodes(poly, q.triangle_order);
        break;
    }
    }

    if (n == 2 && self_intersecting(vol.loops))
        throw GeometryError("initial boundary is self-intersecting");
    if (contains_point(vol, vol.x0))
        throw GeometryError("x0 lies inside the volume");
    const double d = boundary_distance(vol);
    if (!(d > target.epsilon)) {
        std::ostringstream os;
        os << "boundary distance to x0 (" << d << ") does not exceed epsilon (" << target.epsilon << ")";
        throw GeometryError(os.str());
    }

    vol.nodes = std::move(nodes.nodes);
    vol.mass.resize(vol.nodes.size());
    vol.rho0.resize(vol.nodes.size());
    for (std::size_t i = 0; i < vol.nodes.size(); ++i) {
        const double rho = flow.eval(time, vol.nodes[i]).rho;
        vol.rho0[i] = rho;
        vol.mass[i] = rho * nodes.weights[i];
    }
    return vol;
}

MaterialVolume merge_volumes(const MaterialVolume& a, const MaterialVolume& b)
{
    if (a.dimension != b.dimension || a.time != b.time || a.x0 != b.x0 || a.epsilon != b.epsilon)
        throw InvalidArgument("merge_volumes: volumes disagree on dimension, time or target");
    MaterialVolume out = a;
    out.loops.insert(out.loops.end(), b.loops.begin(), b.loops.end());
    const int base = static_cast<int>(out.surface.vertices.size());
    out.surface.vertices.insert(out.surface.vertices.end(), b.surface.vertices.begin(), b.surface.vertices.end());
    for (auto t : b.surface.triangles)
        out.surface.triangles.push_back({base + t[0], base + t[1], base + t[2]});
    out.nodes.insert(out.nodes.end(), b.nodes.begin(), b.nodes.end());
    out.mass.insert(out.mass.end(), b.mass.begin(), b.mass.end());
    out.rho0.insert(out.rho0.end(), b.rho0.begin(), b.rho0.end());
    if (out.dimension == 2 && self_intersecting(out.loops))
        throw GeometryError("merged components overlap");
    return out;
}

MaterialVolume advect(const MaterialVolume& vol, const FlowField& flow, double t_to, double dt)
{
    if (!(t_to > vol.time))
        throw InvalidArgument("advect: target time must be later than the volume time");
    MaterialVolume out = vol;
    std::vector<Vec*> pts = all_points(out);
    for (auto& p : out.nodes)
        pts.push_back(&p);
    rk4_points(pts, flow, vol.time, t_to, dt);
    out.time = t_to;
    if (out.dimension == 2 && self_intersecting(out.loops))
        throw GeometryError("boundary self-intersects after advection (marker resolution lost)");
    return out;
}

MaterialVolume advect_boundary(const MaterialVolume& vol, const FlowField& flow, double t_to, double dt)
{
    if (!(t_to > vol.time))
        throw InvalidArgument("advect: target time must be later than the volume time");
    MaterialVolume out = vol;
    std::vector<Vec*> pts = all_points(out);
    rk4_points(pts, flow, vol.time, t_to, dt);
    out.time = t_to;
    return out;
}

double volume_integral_mass(const MaterialVolume& vol, const PointFunction& f)
{
    std::vector<double> terms(vol.nodes.size());
    for (std::size_t i = 0; i < vol.nodes.size(); ++i)
        terms[i] = f(vol.nodes[i]) * vol.mass[i];
    return pairwise_sum(terms);
}

double volume_integral_mass(const MaterialVolume& vol, const FlowField& flow, const StateIntegrand& f)
{
    std::vector<double> terms(vol.nodes.size());
    for (std::size_t i = 0; i < vol.nodes.size(); ++i)
        terms[i] = f(vol.nodes[i], flow.eval(vol.time, vol.nodes[i])) * vol.mass[i];
    return pairwise_sum(terms);
}

double volume_integral_plain(const MaterialVolume& vol, const StateIntegrand& g, const FlowField& flow)
{
    std::vector<double> terms(vol.nodes.size());
    for (std::size_t i = 0; i < vol.nodes.size(); ++i) {
        const FluidState s = flow.eval(vol.time, vol.nodes[i]);
        if (!(s.rho > 0.0))
            throw DomainError("volume_integral_plain: non-positive density at a node");
        terms[i] = g(vol.nodes[i], s) * (vol.mass[i] / s.rho);
    }
    return pairwise_sum(terms);
}

double surface_integral(const MaterialVolume& vol, const NormalFunction& h)
{
    const auto elems = boundary_elements(vol);
    std::vector<double> terms(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        terms[i] = h(elems[i].midpoint, elems[i].normal) * elems[i].measure;
    return pairwise_sum(terms);
}

double surface_integral(const MaterialVolume& vol, const FlowField& flow, const NormalStateFunction& h)
{
    const auto elems = boundary_elements(vol);
    std::vector<double> terms(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        terms[i] = h(elems[i].midpoint, elems[i].normal, flow.eval(vol.time, elems[i].midpoint)) *
                   elems[i].measure;
    return pairwise_sum(terms);
}

MaterialVolume resample_markers(const MaterialVolume& vol)
{
    if (vol.dimension != 2)
        return vol;
    MaterialVolume out = vol;
    for (auto& loop : out.loops) {
        const std::size_t m = loop.size();
        std::vector<double> cum(m + 1, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            cum[i + 1] = cum[i] + norm(loop[(i + 1) % m] - loop[i]);
        const double total = cum[m];
        std::vector<Vec> next(m);
        std::size_t seg = 0;
        for (std::size_t k = 0; k < m; ++k) {
            const double s = total * static_cast<double>(k) / static_cast<double>(m);
            while (seg + 1 < m && cum[seg + 1] <= s)
                ++seg;
            const double len = cum[seg + 1] - cum[seg];
            const double f = len > 0.0 ? (s - cum[seg]) / len : 0.0;
            next[k] = loop[seg] + f * (loop[(seg + 1) % m] - loop[seg]);
        }
        loop = std::move(next);
    }
    return out;
}

} // namespace lagvol
