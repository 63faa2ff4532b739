#include "fracground/grid.hpp"

#include <cmath>

namespace fracground {

Grid::Grid(int dim_, int points_per_axis_, double half_width_)
    : dim(dim_), points_per_axis(points_per_axis_), half_width(half_width_) {
    if (dim < 1 || dim > 3)
        throw ParameterError("grid dimension must be 1, 2 or 3");
    if (points_per_axis < 8 || points_per_axis % 2 != 0)
        throw ParameterError("points per axis must be even and >= 8");
    if (!(half_width > 0.0) || !std::isfinite(half_width))
        throw ParameterError("half width must be positive and finite");
}

std::size_t Grid::size() const {
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(points_per_axis);
    return total;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= spacing();
    return v;
}

double Grid::box_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= 2.0 * half_width;
    return v;
}

std::array<int, 3> Grid::unflatten(std::size_t flat) const {
    std::array<int, 3> idx{0, 0, 0};
    const auto n = static_cast<std::size_t>(points_per_axis);
    for (int d = dim - 1; d >= 0; --d) {
        idx[d] = static_cast<int>(flat % n);
        flat /= n;
    }
    return idx;
}

Field::Field(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size())
        throw InvalidFieldError("field value count does not match grid size");
    for (double v : values_)
        if (!std::isfinite(v))
            throw InvalidFieldError("field contains non-finite values");
}

Field Field::zeros(const Grid& grid) {
    return Field(grid, std::vector<double>(grid.size(), 0.0));
}

Field Field::sample(const Grid& grid,
                    const std::function<double(const std::array<double, 3>&)>& fn) {
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto idx = grid.unflatten(i);
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int d = 0; d < grid.dim; ++d) x[d] = grid.coord(idx[d]);
        vals[i] = fn(x);
    }
    return Field(grid, std::move(vals));
}

FracParams::FracParams(double s_, int dim_) : s(s_), dim(dim_) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1)");
    if (dim < 1 || dim > 3)
        throw ParameterError("dimension must be 1, 2 or 3");
    if (!(dim > 2.0 * s))
        throw ParameterError("need N > 2s for the critical exponent to exist");
}

namespace {

Field combine(const Field& a, const Field& b,
              const std::function<double(double, double)>& op) {
    if (!(a.grid() == b.grid()))
        throw InvalidFieldError("fields live on different grids");
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]);
    return Field(a.grid(), std::move(out));
}

}  // namespace

Field add(const Field& a, const Field& b) {
    return combine(a, b, [](double x, double y) { return x + y; });
}

Field sub(const Field& a, const Field& b) {
    return combine(a, b, [](double x, double y) { return x - y; });
}

Field scale(const Field& a, double c) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * a[i];
    return Field(a.grid(), std::move(out));
}

Field axpy(const Field& a, double c, const Field& b) {
    return combine(a, b, [c](double x, double y) { return x + c * y; });
}

Field positive_part(const Field& a) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] > 0.0 ? a[i] : 0.0;
    return Field(a.grid(), std::move(out));
}

}  // namespace fracground
