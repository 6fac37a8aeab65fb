// Uniform structured grids (1D 3-point, 2D 5-point) with stencil topology.
#pragma once

#include <array>
#include <vector>

namespace tpo {

// Values on all grid nodes (boundary + interior) at one time level,
// in the grid's fixed lexicographic node ordering.
using GridFunction = std::vector<double>;

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

// Immutable after construction; node ordering is lexicographic by
// coordinates (x fastest), which also fixes the Gauss-Seidel sweep order.
class GridSpec {
public:
    GridSpec() = default;   // empty placeholder; use build() for a real grid

    // nodes_per_dim counts nodes including both endpoints; must be >= 3 so
    // at least one interior node exists. In 2D both axes must yield the
    // same spacing.
    static GridSpec build(int dim, const std::vector<Bounds>& bounds, int nodes_per_dim);
    static GridSpec build_1d(double lo, double hi, int nodes);
    static GridSpec build_2d(double x_lo, double x_hi, double y_lo, double y_hi, int nodes_per_dim);

    int dim() const { return dim_; }
    int nodes_per_dim() const { return n_; }
    int node_count() const { return total_; }
    int interior_count() const { return static_cast<int>(interior_.size()); }
    double spacing() const { return dx_; }
    int stencil_size() const { return 2 * dim_; }   // K
    Bounds bounds(int axis) const { return bounds_[axis]; }

    bool is_interior(int node) const;
    std::array<double, 2> coord(int node) const;    // y = 0 in 1D

    // Axis-adjacent neighbors of an interior node, fixed order
    // (x-, x+[, y-, y+]). Only the first stencil_size() entries are valid.
    // Querying a boundary node is an error: boundary values are Dirichlet
    // data and are never updated.
    std::array<int, 4> neighbors(int node) const;

    // Interior nodes in sweep (lexicographic) order.
    const std::vector<int>& interior_nodes() const { return interior_; }

    // Sum of neighbor values of an interior node.
    double neighbor_sum(int node, const GridFunction& u) const;

private:
    int dim_ = 1;
    int n_ = 0;
    int total_ = 0;
    double dx_ = 0.0;
    std::array<Bounds, 2> bounds_{};
    std::vector<int> interior_;
};

double sup_norm(const GridFunction& u);

} // namespace tpo
