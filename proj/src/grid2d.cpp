#include "movers/grid2d.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace movers::fv2d {

std::string_view to_string(GridKind k) {
    switch (k) {
        case GridKind::Cartesian:
            return "cartesian";
        case GridKind::Ramp:
            return "ramp";
        case GridKind::Polar:
            return "polar";
        case GridKind::Step:
            return "step";
    }
    return "unknown";
}

namespace {

// Unit normal of the segment a -> b rotated clockwise (tangent (tx, ty) -> (ty, -tx)).
FaceGeometry clockwise_face(const Vec2& a, const Vec2& b) {
    const double tx = b.x - a.x;
    const double ty = b.y - a.y;
    FaceGeometry f;
    f.length = std::hypot(tx, ty);
    if (!(f.length > 0.0)) throw ConfigError("degenerate grid: zero-length face");
    f.n = Normal{ty / f.length, -tx / f.length};
    f.midpoint = Vec2{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    return f;
}

FaceGeometry counter_clockwise_face(const Vec2& a, const Vec2& b) {
    FaceGeometry f = clockwise_face(a, b);
    f.n = -f.n;
    return f;
}

}  // namespace

StructuredGrid2D::StructuredGrid2D(GridKind kind, int ni, int nj, std::vector<Vec2> nodes,
                                   std::vector<std::uint8_t> blanked)
    : kind_(kind), ni_(ni), nj_(nj), nodes_(std::move(nodes)), blanked_(std::move(blanked)) {
    if (ni < 2 || nj < 2) throw ConfigError("grid needs at least 2x2 cells");
    if (nodes_.size() != static_cast<std::size_t>((ni + 1) * (nj + 1))) throw ConfigError("node count mismatch");
    if (!blanked_.empty() && blanked_.size() != static_cast<std::size_t>(ni * nj)) {
        throw ConfigError("blanking mask size mismatch");
    }

    i_faces_.resize(static_cast<std::size_t>((ni + 1) * nj));
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i <= ni; ++i) {
            // tangent along +j; clockwise rotation points toward +i
            i_faces_[static_cast<std::size_t>(i + j * (ni + 1))] = clockwise_face(node(i, j), node(i, j + 1));
        }
    }
    j_faces_.resize(static_cast<std::size_t>(ni * (nj + 1)));
    for (int j = 0; j <= nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            j_faces_[static_cast<std::size_t>(i + j * ni)] = counter_clockwise_face(node(i, j), node(i + 1, j));
        }
    }

    areas_.resize(static_cast<std::size_t>(ni * nj));
    centroids_.resize(areas_.size());
    for (int j = 0; j < nj; ++j) {
        for (int i = 0; i < ni; ++i) {
            const Vec2& a = node(i, j);
            const Vec2& b = node(i + 1, j);
            const Vec2& c = node(i + 1, j + 1);
            const Vec2& d = node(i, j + 1);
            // half the cross product of the diagonals
            const double area = 0.5 * ((c.x - a.x) * (d.y - b.y) - (c.y - a.y) * (d.x - b.x));
            if (!(area > 0.0)) {
                std::ostringstream msg;
                msg << "degenerate grid: non-positive area in cell (" << i << ", " << j << ")";
                throw ConfigError(msg.str());
            }
            areas_[cell_index(i, j)] = area;
            centroids_[cell_index(i, j)] = Vec2{0.25 * ((a.x + c.x) + (b.x + d.x)), 0.25 * ((a.y + c.y) + (b.y + d.y))};
        }
    }
}

int StructuredGrid2D::fluid_cell_count() const {
    if (blanked_.empty()) return ni_ * nj_;
    int n = 0;
    for (auto b : blanked_) n += b == 0 ? 1 : 0;
    return n;
}

StructuredGrid2D make_cartesian(const CartesianParams& p) {
    if (!(p.x_max > p.x_min) || !(p.y_max > p.y_min)) throw ConfigError("cartesian grid needs positive extents");
    if (p.ni < 2 || p.nj < 2) throw ConfigError("grid needs at least 2x2 cells");
    std::vector<Vec2> nodes(static_cast<std::size_t>((p.ni + 1) * (p.nj + 1)));
    const double dx = (p.x_max - p.x_min) / p.ni;
    const double dy = (p.y_max - p.y_min) / p.nj;
    for (int j = 0; j <= p.nj; ++j) {
        for (int i = 0; i <= p.ni; ++i) {
            nodes[static_cast<std::size_t>(i + j * (p.ni + 1))] = Vec2{p.x_min + i * dx, p.y_min + j * dy};
        }
    }
    return StructuredGrid2D(GridKind::Cartesian, p.ni, p.nj, std::move(nodes));
}

double RampParams::wall_height(double x) const {
    const double ramp_end = inlet_length + ramp_length;
    if (x <= inlet_length) return 0.0;
    const double slope = std::tan(angle);
    if (x >= ramp_end) return ramp_length * slope;
    return (x - inlet_length) * slope;
}

StructuredGrid2D make_ramp(const RampParams& p) {
    if (!(p.inlet_length >= 0.0 && p.ramp_length > 0.0 && p.height > 0.0 && p.angle >= 0.0)) {
        throw ConfigError("ramp geometry needs positive dimensions");
    }
    if (!(p.total_length >= p.inlet_length + p.ramp_length)) throw ConfigError("ramp longer than the channel");
    if (!(p.wall_height(p.total_length) < p.height)) throw ConfigError("ramp closes the channel");
    if (p.ni < 2 || p.nj < 2) throw ConfigError("grid needs at least 2x2 cells");
    std::vector<Vec2> nodes(static_cast<std::size_t>((p.ni + 1) * (p.nj + 1)));
    for (int i = 0; i <= p.ni; ++i) {
        const double x = p.total_length * i / p.ni;
        const double yb = p.wall_height(x);
        for (int j = 0; j <= p.nj; ++j) {
            nodes[static_cast<std::size_t>(i + j * (p.ni + 1))] = Vec2{x, yb + (p.height - yb) * j / p.nj};
        }
    }
    return StructuredGrid2D(GridKind::Ramp, p.ni, p.nj, std::move(nodes));
}

StructuredGrid2D make_polar(const PolarParams& p) {
    if (!(p.radius > 0.0) || !(p.outer_base > p.radius) || !(p.outer_bulge >= 0.0)) {
        throw ConfigError("polar grid needs outer boundary outside the cylinder");
    }
    if (p.ni < 2 || p.nj < 2) throw ConfigError("grid needs at least 2x2 cells");
    const double pi = std::numbers::pi;
    std::vector<Vec2> nodes(static_cast<std::size_t>((p.ni + 1) * (p.nj + 1)));
    auto at = [&](int i, int j) -> Vec2& { return nodes[static_cast<std::size_t>(i + j * (p.ni + 1))]; };
    // Upper half (theta <= pi) from the formulas, lower half mirrored so the
    // grid is exactly symmetric about y = 0.
    for (int j = 0; 2 * j <= p.nj; ++j) {
        const double theta = 0.5 * pi + pi * j / p.nj;
        const double s = std::sin(theta);
        const double r_out = p.outer_base + p.outer_bulge * s * s;
        const bool on_axis = 2 * j == p.nj;
        for (int i = 0; i <= p.ni; ++i) {
            const double r = p.radius + (r_out - p.radius) * i / p.ni;
            Vec2 v{on_axis ? -r : r * std::cos(theta), on_axis ? 0.0 : r * s};
            if (j == 0) v.x = 0.0;
            at(i, j) = v;
            at(i, p.nj - j) = Vec2{v.x, -v.y};
        }
    }
    return StructuredGrid2D(GridKind::Polar, p.ni, p.nj, std::move(nodes));
}

StructuredGrid2D make_step(const StepParams& p) {
    StructuredGrid2D box = make_cartesian(p.box);
    std::vector<Vec2> nodes;
    nodes.reserve(static_cast<std::size_t>((box.ni() + 1) * (box.nj() + 1)));
    for (int j = 0; j <= box.nj(); ++j) {
        for (int i = 0; i <= box.ni(); ++i) nodes.push_back(box.node(i, j));
    }
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(box.ni() * box.nj()), 0);
    int count = 0;
    for (int j = 0; j < box.nj(); ++j) {
        for (int i = 0; i < box.ni(); ++i) {
            const Vec2& c = box.centroid(i, j);
            if (c.x > p.block_x_min && c.x < p.block_x_max && c.y > p.block_y_min && c.y < p.block_y_max) {
                mask[static_cast<std::size_t>(i + j * box.ni())] = 1;
                ++count;
            }
        }
    }
    if (count == 0) throw ConfigError("step block covers no cells");
    if (count == box.ni() * box.nj()) throw ConfigError("step block covers every cell");
    return StructuredGrid2D(GridKind::Step, box.ni(), box.nj(), std::move(nodes), std::move(mask));
}

}  // namespace movers::fv2d
