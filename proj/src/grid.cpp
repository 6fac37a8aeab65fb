#include "tpo/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tpo {

GridSpec GridSpec::build(int dim, const std::vector<Bounds>& bounds, int nodes_per_dim) {
    if (dim != 1 && dim != 2)
        throw std::invalid_argument("grid: dim must be 1 or 2");
    if (static_cast<int>(bounds.size()) != dim)
        throw std::invalid_argument("grid: need one bounds pair per dimension");
    if (nodes_per_dim < 3)
        throw std::invalid_argument("grid: nodes_per_dim must be >= 3 (no interior node otherwise)");

    GridSpec g;
    g.dim_ = dim;
    g.n_ = nodes_per_dim;

    double dx0 = 0.0;
    for (int a = 0; a < dim; ++a) {
        const double len = bounds[a].hi - bounds[a].lo;
        if (!(len > 0.0))
            throw std::invalid_argument("grid: degenerate interval on axis " + std::to_string(a));
        const double dx = len / (nodes_per_dim - 1);
        if (a == 0) {
            dx0 = dx;
        } else if (std::abs(dx - dx0) > 1e-12 * dx0) {
            throw std::invalid_argument("grid: spacing must be identical across dimensions");
        }
        g.bounds_[a] = bounds[a];
    }
    g.dx_ = dx0;
    g.total_ = (dim == 1) ? nodes_per_dim : nodes_per_dim * nodes_per_dim;

    const int n = nodes_per_dim;
    if (dim == 1) {
        for (int i = 1; i < n - 1; ++i) g.interior_.push_back(i);
    } else {
        for (int iy = 1; iy < n - 1; ++iy)
            for (int ix = 1; ix < n - 1; ++ix)
                g.interior_.push_back(iy * n + ix);
    }
    return g;
}

GridSpec GridSpec::build_1d(double lo, double hi, int nodes) {
    return build(1, {Bounds{lo, hi}}, nodes);
}

GridSpec GridSpec::build_2d(double x_lo, double x_hi, double y_lo, double y_hi, int nodes_per_dim) {
    return build(2, {Bounds{x_lo, x_hi}, Bounds{y_lo, y_hi}}, nodes_per_dim);
}

bool GridSpec::is_interior(int node) const {
    if (node < 0 || node >= total_) return false;
    if (dim_ == 1) return node > 0 && node < n_ - 1;
    const int ix = node % n_;
    const int iy = node / n_;
    return ix > 0 && ix < n_ - 1 && iy > 0 && iy < n_ - 1;
}

std::array<double, 2> GridSpec::coord(int node) const {
    if (node < 0 || node >= total_)
        throw std::out_of_range("grid: node id out of range");
    if (dim_ == 1)
        return {bounds_[0].lo + node * dx_, 0.0};
    const int ix = node % n_;
    const int iy = node / n_;
    return {bounds_[0].lo + ix * dx_, bounds_[1].lo + iy * dx_};
}

std::array<int, 4> GridSpec::neighbors(int node) const {
    if (!is_interior(node))
        throw std::invalid_argument("grid: neighbors() requires an interior node");
    if (dim_ == 1)
        return {node - 1, node + 1, -1, -1};
    return {node - 1, node + 1, node - n_, node + n_};
}

double GridSpec::neighbor_sum(int node, const GridFunction& u) const {
    const auto nb = neighbors(node);
    double s = 0.0;
    for (int j = 0; j < stencil_size(); ++j) s += u[nb[j]];
    return s;
}

double sup_norm(const GridFunction& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

} // namespace tpo
