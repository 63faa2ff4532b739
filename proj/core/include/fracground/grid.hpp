#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "fracground/errors.hpp"

namespace fracground {

// Periodic box [-L, L)^N sampled with n points per axis (n a power of two).
// Fourier modes are xi_k = (pi/L) * k componentwise, k in {-n/2, ..., n/2-1}.
struct Grid {
    int dim = 1;
    int points_per_axis = 8;
    double half_width = 1.0;

    Grid(int dim_, int points_per_axis_, double half_width_);

    double spacing() const { return 2.0 * half_width / points_per_axis; }
    std::size_t size() const;          // n^dim
    double cell_volume() const;        // spacing^dim
    double box_volume() const;         // (2L)^dim

    // Physical coordinate of axis index j in [0, n).
    double coord(int j) const { return -half_width + j * spacing(); }
    // Signed mode number for axis index j: j for j < n/2, j - n otherwise.
    int mode_number(int j) const {
        return j < points_per_axis / 2 ? j : j - points_per_axis;
    }
    // Fourier mode xi for axis index j.
    double mode(int j) const {
        return 3.14159265358979323846 / half_width * mode_number(j);
    }

    // Decompose a flat row-major index into per-axis indices (dim entries used).
    std::array<int, 3> unflatten(std::size_t flat) const;

    bool operator==(const Grid&) const = default;
};

// Real scalar function sampled on a Grid. Immutable once constructed;
// construction validates the size and rejects non-finite values.
class Field {
public:
    Field(const Grid& grid, std::vector<double> values);

    static Field zeros(const Grid& grid);
    // Sample fn at every node; fn receives the physical coordinates
    // (entries past grid.dim are zero).
    static Field sample(const Grid& grid,
                        const std::function<double(const std::array<double, 3>&)>& fn);

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

private:
    Grid grid_;
    std::vector<double> values_;
};

// Fractional-order parameters: 0 < s < 1 with N > 2s.
struct FracParams {
    double s;
    int dim;

    FracParams(double s_, int dim_);
    double two_star() const { return 2.0 * dim / (dim - 2.0 * s); }
};

// Elementwise helpers (allocate a fresh Field).
Field add(const Field& a, const Field& b);
Field sub(const Field& a, const Field& b);
Field scale(const Field& a, double c);
// a + c*b
Field axpy(const Field& a, double c, const Field& b);
// max(a, 0) pointwise
Field positive_part(const Field& a);

}  // namespace fracground
