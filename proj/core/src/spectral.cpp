#include "fracground/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace fracground {

namespace {

// FFTW planning is not thread-safe; plans are cached per (dims, sign) and
// executed via the new-array interface, which is safe to call concurrently.
// FFTW_UNALIGNED keeps plans valid for arbitrary caller buffers.
std::mutex planner_mutex;

fftw_plan cached_plan(const std::vector<int>& dims, int sign) {
    static std::map<std::pair<std::vector<int>, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex);
    const auto key = std::make_pair(dims, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    fftw_complex* buf = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(dims.size()),
                                   dims.data(), buf, buf, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    cache.emplace(key, plan);
    return plan;
}

void transform_in_place(const Grid& grid, Spectrum& buf, int sign) {
    std::vector<int> dims(static_cast<std::size_t>(grid.dim),
                          grid.points_per_axis);
    fftw_plan plan = cached_plan(dims, sign);
    auto* raw = reinterpret_cast<fftw_complex*>(buf.data());
    fftw_execute_dft(plan, raw, raw);
}

// Call f(flat_index, per_axis_indices) for every node in row-major order.
template <class F>
void for_each_index(const Grid& grid, F&& f) {
    const int n = grid.points_per_axis;
    std::array<int, 3> idx{0, 0, 0};
    const std::size_t total = grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        f(i, idx);
        for (int d = grid.dim - 1; d >= 0; --d) {
            if (++idx[d] < n) break;
            idx[d] = 0;
        }
    }
}

void check_s(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1)");
}

}  // namespace

Spectrum forward(const Field& u) {
    Spectrum buf(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) buf[i] = u[i];
    transform_in_place(u.grid(), buf, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(u.size());
    for (auto& c : buf) c *= scale;
    return buf;
}

Field inverse(const Grid& grid, const Spectrum& c) {
    if (c.size() != grid.size())
        throw InvalidFieldError("spectrum size does not match grid");
    Spectrum buf = c;
    transform_in_place(grid, buf, FFTW_BACKWARD);
    std::vector<double> vals(buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i) vals[i] = buf[i].real();
    return Field(grid, std::move(vals));
}

Field apply_symbol(const Field& u, const std::function<double(double)>& symbol) {
    const Grid& g = u.grid();
    Spectrum c = forward(u);
    for_each_index(g, [&](std::size_t i, const std::array<int, 3>& idx) {
        double xi2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double xi = g.mode(idx[d]);
            xi2 += xi * xi;
        }
        c[i] *= symbol(xi2);
    });
    return inverse(g, c);
}

Field fractional_laplacian(const Field& u, double s) {
    check_s(s);
    return apply_symbol(u, [s](double xi2) {
        return xi2 > 0.0 ? std::pow(xi2, s) : 0.0;
    });
}

double dnorm_sq(const Field& u, double s) {
    check_s(s);
    const Grid& g = u.grid();
    Spectrum c = forward(u);
    double acc = 0.0;
    for_each_index(g, [&](std::size_t i, const std::array<int, 3>& idx) {
        double xi2 = 0.0;
        for (int d = 0; d < g.dim; ++d) {
            const double xi = g.mode(idx[d]);
            xi2 += xi * xi;
        }
        if (xi2 > 0.0) acc += std::pow(xi2, s) * std::norm(c[i]);
    });
    return g.box_volume() * acc;
}

double lp_norm(const Field& u, double p) {
    if (!(p >= 1.0)) throw ParameterError("lp_norm requires p >= 1");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += std::pow(std::abs(u[i]), p);
    return std::pow(acc * u.grid().cell_volume(), 1.0 / p);
}

double inner(const Field& u, const Field& v) {
    if (!(u.grid() == v.grid()))
        throw InvalidFieldError("fields live on different grids");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc * u.grid().cell_volume();
}

double integral(const Field& u) {
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i];
    return acc * u.grid().cell_volume();
}

Field dilate(const Field& u, double t) {
    if (!(t > 0.0) || !std::isfinite(t))
        throw ParameterError("dilation factor must be positive");
    const Grid& g = u.grid();
    const int n = g.points_per_axis;
    const double L = g.half_width;
    if (2.0 * L * t < 4.0 * g.spacing())
        throw ParameterError("dilation shrinks the support below 4 grid cells");

    // Per-axis trigonometric resampling at y_j = x_j / t. The evaluation
    // matrix E[j][k] = exp(i*xi_k*(y_j + L)) is shared by all axes; rows with
    // |y_j| > L are zeroed (mass leaving the box is truncated).
    std::vector<std::complex<double>> eval(static_cast<std::size_t>(n) * n);
    for (int j = 0; j < n; ++j) {
        const double y = g.coord(j) / t;
        const bool outside = y < -L || y >= L;
        for (int k = 0; k < n; ++k) {
            eval[static_cast<std::size_t>(j) * n + k] =
                outside ? std::complex<double>(0.0)
                        : std::exp(std::complex<double>(0.0, g.mode(k) * (y + L)));
        }
    }

    std::vector<double> data = u.values();
    std::vector<int> dims1{n};
    fftw_plan line_plan = cached_plan(dims1, FFTW_FORWARD);
    Spectrum line(n), coef(n);

    // Row-major layout: stride of axis a is n^(dim-1-a).
    for (int axis = 0; axis < g.dim; ++axis) {
        std::size_t stride = 1;
        for (int d = g.dim - 1; d > axis; --d) stride *= static_cast<std::size_t>(n);
        const std::size_t block = stride * static_cast<std::size_t>(n);
        const std::size_t total = g.size();
        for (std::size_t base = 0; base < total; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t start = base + off;
                for (int j = 0; j < n; ++j) line[j] = data[start + j * stride];
                auto* raw = reinterpret_cast<fftw_complex*>(line.data());
                fftw_execute_dft(line_plan, raw, raw);
                const double scale = 1.0 / n;
                for (int k = 0; k < n; ++k) coef[k] = line[k] * scale;
                for (int j = 0; j < n; ++j) {
                    std::complex<double> acc(0.0);
                    const std::complex<double>* row = &eval[static_cast<std::size_t>(j) * n];
                    for (int k = 0; k < n; ++k) acc += row[k] * coef[k];
                    data[start + j * stride] = acc.real();
                }
            }
        }
    }
    return Field(g, std::move(data));
}

namespace {

// Per-axis spectral slot map between a grid with n points and one with 2n.
// Interior modes map one-to-one; the coarse Nyquist mode m = -n/2 splits
// into fine modes +-n/2 with weight 1/2 each. coarsen2 uses the transpose,
// which makes it the exact adjoint of refine2 under box quadrature.
struct SlotMap {
    int fine_index[2];
    double weight[2];
    int count;
};

std::vector<SlotMap> axis_slots(int n_coarse) {
    const int nf = 2 * n_coarse;
    std::vector<SlotMap> slots(n_coarse);
    for (int j = 0; j < n_coarse; ++j) {
        const int m = j < n_coarse / 2 ? j : j - n_coarse;
        if (m == -n_coarse / 2) {
            slots[j].count = 2;
            slots[j].fine_index[0] = n_coarse / 2;          // mode +n/2
            slots[j].fine_index[1] = nf - n_coarse / 2;     // mode -n/2
            slots[j].weight[0] = 0.5;
            slots[j].weight[1] = 0.5;
        } else {
            slots[j].count = 1;
            slots[j].fine_index[0] = m >= 0 ? m : nf + m;
            slots[j].weight[0] = 1.0;
        }
    }
    return slots;
}

}  // namespace

Field refine2(const Field& u) {
    const Grid& g = u.grid();
    const Grid fine(g.dim, 2 * g.points_per_axis, g.half_width);
    const auto slots = axis_slots(g.points_per_axis);
    Spectrum c = forward(u);
    Spectrum cf(fine.size(), std::complex<double>(0.0));
    const int nf = fine.points_per_axis;

    for_each_index(g, [&](std::size_t i, const std::array<int, 3>& idx) {
        // Scatter c[i] into up to 2^dim fine slots.
        std::array<int, 3> pick{0, 0, 0};
        while (true) {
            std::size_t fi = 0;
            double w = 1.0;
            for (int d = 0; d < g.dim; ++d) {
                const SlotMap& sm = slots[idx[d]];
                fi = fi * static_cast<std::size_t>(nf) +
                     static_cast<std::size_t>(sm.fine_index[pick[d]]);
                w *= sm.weight[pick[d]];
            }
            cf[fi] += w * c[i];
            int d = g.dim - 1;
            for (; d >= 0; --d) {
                if (++pick[d] < slots[idx[d]].count) break;
                pick[d] = 0;
            }
            if (d < 0) break;
        }
    });
    return inverse(fine, cf);
}

Field coarsen2(const Field& v) {
    const Grid& gf = v.grid();
    if (gf.points_per_axis < 16)
        throw ParameterError("fine grid too small to coarsen");
    const Grid coarse(gf.dim, gf.points_per_axis / 2, gf.half_width);
    const auto slots = axis_slots(coarse.points_per_axis);
    Spectrum cf = forward(v);
    Spectrum c(coarse.size());
    const int nf = gf.points_per_axis;

    for_each_index(coarse, [&](std::size_t i, const std::array<int, 3>& idx) {
        std::array<int, 3> pick{0, 0, 0};
        std::complex<double> acc(0.0);
        while (true) {
            std::size_t fi = 0;
            double w = 1.0;
            for (int d = 0; d < coarse.dim; ++d) {
                const SlotMap& sm = slots[idx[d]];
                fi = fi * static_cast<std::size_t>(nf) +
                     static_cast<std::size_t>(sm.fine_index[pick[d]]);
                w *= sm.weight[pick[d]];
            }
            acc += w * cf[fi];
            int d = coarse.dim - 1;
            for (; d >= 0; --d) {
                if (++pick[d] < slots[idx[d]].count) break;
                pick[d] = 0;
            }
            if (d < 0) break;
        }
        c[i] = acc;
    });
    return inverse(coarse, c);
}

}  // namespace fracground
