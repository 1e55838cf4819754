#pragma once

// Structured single-block quadrilateral grids.
//
// Nodes are indexed (i, j) with i = 0..ni, j = 0..nj; cell (i, j) is bounded by
// nodes (i, j), (i+1, j), (i+1, j+1), (i, j+1) in counter-clockwise order.
// "i-faces" separate cells (i-1, j) and (i, j) and have normals pointing toward
// increasing i; "j-faces" likewise for j.

#include <cstdint>
#include <string_view>
#include <vector>

#include "movers/euler.hpp"

namespace movers::fv2d {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct FaceGeometry {
    Normal n;               ///< unit normal toward increasing index
    double length = 0.0;
    Vec2 midpoint;
};

enum class GridKind { Cartesian, Ramp, Polar, Step };

std::string_view to_string(GridKind k);

class StructuredGrid2D {
public:
    StructuredGrid2D() = default;
    /// `nodes` is (ni+1)*(nj+1), i fastest. `blanked` is empty or ni*nj.
    StructuredGrid2D(GridKind kind, int ni, int nj, std::vector<Vec2> nodes, std::vector<std::uint8_t> blanked = {});

    GridKind kind() const { return kind_; }
    int ni() const { return ni_; }
    int nj() const { return nj_; }

    const Vec2& node(int i, int j) const { return nodes_[static_cast<std::size_t>(i + j * (ni_ + 1))]; }
    const FaceGeometry& i_face(int i, int j) const { return i_faces_[static_cast<std::size_t>(i + j * (ni_ + 1))]; }
    const FaceGeometry& j_face(int i, int j) const { return j_faces_[static_cast<std::size_t>(i + j * ni_)]; }
    double area(int i, int j) const { return areas_[cell_index(i, j)]; }
    const Vec2& centroid(int i, int j) const { return centroids_[cell_index(i, j)]; }

    bool blanked(int i, int j) const { return !blanked_.empty() && blanked_[cell_index(i, j)] != 0; }
    bool has_blanking() const { return !blanked_.empty(); }
    /// Interior, non-blanked cell.
    bool fluid(int i, int j) const { return i >= 0 && i < ni_ && j >= 0 && j < nj_ && !blanked(i, j); }
    int fluid_cell_count() const;

private:
    std::size_t cell_index(int i, int j) const { return static_cast<std::size_t>(i + j * ni_); }

    GridKind kind_ = GridKind::Cartesian;
    int ni_ = 0;
    int nj_ = 0;
    std::vector<Vec2> nodes_;
    std::vector<FaceGeometry> i_faces_;
    std::vector<FaceGeometry> j_faces_;
    std::vector<double> areas_;
    std::vector<Vec2> centroids_;
    std::vector<std::uint8_t> blanked_;
};

struct CartesianParams {
    double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
    int ni = 40, nj = 40;
};

/// Channel whose lower wall is flat for `inlet_length`, rises at `angle` over
/// `ramp_length` (horizontal extent), then is flat again to `total_length`.
/// The upper wall is y = height. Grid lines are vertical in i and spaced
/// uniformly between the walls in j.
struct RampParams {
    double inlet_length = 0.5;
    double ramp_length = 1.0;
    double total_length = 3.0;
    double height = 1.0;
    double angle = 0.2617993877991494;  // 15 degrees
    int ni = 240, nj = 80;

    double wall_height(double x) const;
};

/// Half annulus around a unit cylinder facing flow in +x. i runs radially
/// outward from the wall (r = radius) to the outer boundary
/// r_out(theta) = outer_base + outer_bulge * sin^2(theta); j runs
/// counter-clockwise over theta in [pi/2, 3pi/2]. The lower half of the grid is
/// the exact mirror image (y -> -y) of the upper half.
struct PolarParams {
    double radius = 1.0;
    double outer_base = 2.0;
    double outer_bulge = 1.5;
    int ni = 45, nj = 45;
};

/// Box with a blanked rectangular block [block_x_min, block_x_max] x
/// [block_y_min, block_y_max]; cells whose centroids fall in the block are
/// blanked.
struct StepParams {
    CartesianParams box{0.0, 3.0, 0.0, 1.0, 240, 80};
    double block_x_min = 0.6, block_x_max = 3.0, block_y_min = 0.0, block_y_max = 0.2;
};

StructuredGrid2D make_cartesian(const CartesianParams& p);
StructuredGrid2D make_ramp(const RampParams& p);
StructuredGrid2D make_polar(const PolarParams& p);
StructuredGrid2D make_step(const StepParams& p);

}  // namespace movers::fv2d
