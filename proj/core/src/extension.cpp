#include "fracground/extension.hpp"

#include <algorithm>
#include <cmath>

#include "fracground/sharp_constants.hpp"
#include "fracground/spectral.hpp"

namespace fracground {

namespace {

int oversample_factor(const Grid& g, double y) {
    // The kernel width in x is ~y; sample it at least 4x finer than that
    // (capped to keep the fine grid affordable, more tightly in 2-D/3-D).
    const int cap = g.dim == 1 ? 32 : 4;
    int f = 1;
    while (f < cap && g.spacing() / f > y / 4.0) f *= 2;
    return f;
}

// Periodized Poisson kernel sampled on the oversampled grid, plus the
// discrete multiplier it induces for the coarse Fourier modes.
std::vector<double> sample_kernel(const Grid& g, int f, double y, double s) {
    const int N = g.dim;
    const int nf = f * g.points_per_axis;
    const double L = g.half_width;
    const double hf = 2.0 * L / nf;
    const double a = N + 2.0 * s;           // kernel decay exponent
    const double y2s = std::pow(y, 2.0 * s);
    const int J = N == 1 ? 4 : 2;           // direct image count per axis

    std::size_t total = 1;
    for (int d = 0; d < N; ++d) total *= static_cast<std::size_t>(nf);
    std::vector<double> K(total, 0.0);

    std::array<int, 3> idx{0, 0, 0};
    for (std::size_t i = 0; i < total; ++i) {
        std::array<double, 3> z{0.0, 0.0, 0.0};
        for (int d = 0; d < N; ++d) z[d] = -L + idx[d] * hf;

        double val = 0.0;
        // direct images
        std::array<int, 3> im{-J, -J, -J};
        for (int d = N; d < 3; ++d) im[d] = 0;
        while (true) {
            double r2 = y * y;
            for (int d = 0; d < N; ++d) {
                const double zz = z[d] + 2.0 * L * im[d];
                r2 += zz * zz;
            }
            val += y2s * std::pow(r2, -a / 2.0);
            int d = N - 1;
            for (; d >= 0; --d) {
                if (++im[d] <= J) break;
                im[d] = -J;
            }
            if (d < 0) break;
        }
        if (N == 1) {
            // Euler-Maclaurin correction for the images beyond |j| = J:
            // sum_{j>J} y^(2s) (2Lj +- z)^(-a) per side.
            for (double sign : {1.0, -1.0}) {
                const double zz = 2.0 * L * (J + 1) + sign * z[0];
                val += y2s * (std::pow(zz, 1.0 - a) / ((a - 1.0) * 2.0 * L) +
                              0.5 * std::pow(zz, -a) +
                              (2.0 * L * a / 12.0) * std::pow(zz, -a - 1.0));
            }
        }
        K[i] = val;

        for (int d = N - 1; d >= 0; --d) {
            if (++idx[d] < nf) break;
            idx[d] = 0;
        }
    }
    return K;
}

}  // namespace

Field poisson_extend(const Field& u, double y, double s) {
    if (!(y > 0.0) || !std::isfinite(y))
        throw ParameterError("extension height y must be positive");
    if (!(s > 0.0 && s < 1.0))
        throw ParameterError("fractional order s must lie in (0,1)");

    const Grid& g = u.grid();
    const int f = oversample_factor(g, y);
    const int nf = f * g.points_per_axis;
    const Grid fine(g.dim, std::max(nf, 8), g.half_width);

    std::vector<double> K = sample_kernel(g, f, y, s);
    Spectrum kc(K.size());
    for (std::size_t i = 0; i < K.size(); ++i) kc[i] = K[i];
    // Reuse the grid transform machinery for the fine kernel FFT.
    const Field kf(fine, std::move(K));
    Spectrum kspec = forward(kf);
    const double mass = kspec[0].real();  // DC bin = mean; positive kernel

    // Multiplier for coarse mode k: (-1)^(sum k_d) * spec[k]/spec[0], which
    // is the Riemann sum of int K(z) exp(-i xi_k z) dz after unit-mass
    // renormalization. The DC multiplier is exactly 1 (mean preservation).
    Spectrum c = forward(u);
    std::array<int, 3> idx{0, 0, 0};
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
        std::size_t fi = 0;
        int ksum = 0;
        for (int d = 0; d < g.dim; ++d) {
            const int m = g.mode_number(idx[d]);
            ksum += m;
            fi = fi * static_cast<std::size_t>(nf) +
                 static_cast<std::size_t>(m >= 0 ? m : nf + m);
        }
        const double sign = (ksum % 2 == 0) ? 1.0 : -1.0;
        c[i] *= sign * kspec[fi].real() / mass;

        for (int d = g.dim - 1; d >= 0; --d) {
            if (++idx[d] < g.points_per_axis) break;
            idx[d] = 0;
        }
    }
    return inverse(g, c);
}

ExtensionStack build_stack(const Field& u, double s, int slices, double y_min,
                           double y_max_factor) {
    if (slices < 16)
        throw ResolutionError("extension stack needs at least 16 slices");
    if (!(y_min > 0.0))
        throw ParameterError("y_min must be positive");
    const double y_max = y_max_factor * u.grid().half_width;
    if (!(y_max > y_min))
        throw ParameterError("y_max must exceed y_min");

    ExtensionStack st{u, s, {}, {}, 0.0, 0.0};
    const double ratio = std::pow(y_max / y_min, 1.0 / (slices - 1));
    st.grading_ratio = ratio;
    st.y_nodes.reserve(slices);
    st.slices.reserve(slices);
    for (int j = 0; j < slices; ++j) {
        const double y = y_min * std::pow(ratio, j);
        st.y_nodes.push_back(y);
        st.slices.push_back(poisson_extend(u, y, s));
    }
    return st;
}

double extension_energy(const ExtensionStack& st) {
    const int M = static_cast<int>(st.y_nodes.size());
    if (M < 16) throw ResolutionError("extension stack needs at least 16 slices");
    const Grid& g = st.base.grid();
    const double s = st.s;

    // G(y_m) = int |grad_x w|^2 + |dw/dy|^2 dx per slice.
    std::vector<double> Gx(M), Gy(M);
    for (int m = 0; m < M; ++m) {
        Spectrum c = forward(st.slices[m]);
        double acc = 0.0;
        std::array<int, 3> idx{0, 0, 0};
        for (std::size_t i = 0; i < c.size(); ++i) {
            double xi2 = 0.0;
            for (int d = 0; d < g.dim; ++d) {
                const double xi = g.mode(idx[d]);
                xi2 += xi * xi;
            }
            acc += xi2 * std::norm(c[i]);
            for (int d = g.dim - 1; d >= 0; --d) {
                if (++idx[d] < g.points_per_axis) break;
                idx[d] = 0;
            }
        }
        Gx[m] = g.box_volume() * acc;
    }
    // dw/dy by finite differences on the graded mesh.
    for (int m = 0; m < M; ++m) {
        std::vector<double> dw(g.size());
        if (m == 0 || m == M - 1) {
            const int a = m == 0 ? 0 : M - 2;
            const double dy = st.y_nodes[a + 1] - st.y_nodes[a];
            for (std::size_t i = 0; i < dw.size(); ++i)
                dw[i] = (st.slices[a + 1][i] - st.slices[a][i]) / dy;
        } else {
            const double h1 = st.y_nodes[m] - st.y_nodes[m - 1];
            const double h2 = st.y_nodes[m + 1] - st.y_nodes[m];
            const double wl = -h2 / (h1 * (h1 + h2));
            const double wc = (h2 - h1) / (h1 * h2);
            const double wr = h1 / (h2 * (h1 + h2));
            for (std::size_t i = 0; i < dw.size(); ++i)
                dw[i] = wl * st.slices[m - 1][i] + wc * st.slices[m][i] +
                        wr * st.slices[m + 1][i];
        }
        double acc = 0.0;
        for (double v : dw) acc += v * v;
        Gy[m] = acc * g.cell_volume();
    }

    double energy = 0.0;
    // Segment [0, y_1]: w(y) ~ u + a(x) y^(2s) near the boundary, so the
    // y-derivative part integrates to 2s * y_1^(2s) * int a^2, and the
    // x-gradient part is treated as constant in y.
    {
        const double y1 = st.y_nodes[0];
        energy += Gx[0] * std::pow(y1, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
        double a2 = 0.0;
        const double y2s = std::pow(y1, 2.0 * s);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double a = (st.slices[0][i] - st.base[i]) / y2s;
            a2 += a * a;
        }
        energy += 2.0 * s * y2s * a2 * g.cell_volume();
    }
    // Interior intervals: linear interpolation of G against the weight
    // y^(1-2s), using the exact moments of the weight.
    for (int m = 0; m + 1 < M; ++m) {
        const double ya = st.y_nodes[m], yb = st.y_nodes[m + 1];
        const double dy = yb - ya;
        const double m0 = (std::pow(yb, 2.0 - 2.0 * s) - std::pow(ya, 2.0 - 2.0 * s)) /
                          (2.0 - 2.0 * s);
        const double m1 = (std::pow(yb, 3.0 - 2.0 * s) - std::pow(ya, 3.0 - 2.0 * s)) /
                          (3.0 - 2.0 * s);
        const double Ga = Gx[m] + Gy[m];
        const double Gb = Gx[m + 1] + Gy[m + 1];
        energy += Ga * (yb * m0 - m1) / dy + Gb * (m1 - ya * m0) / dy;
    }
    return energy;
}

namespace {

// Solve the 3x3 system sum_j M[i][j] coeff[j] = d[i] for coeff[0].
std::array<double, 3> first_row_inverse(const std::array<std::array<double, 3>, 3>& M) {
    const double det =
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
        M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
        M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    // First row of M^-1 (cofactors of the first column, transposed).
    return {(M[1][1] * M[2][2] - M[1][2] * M[2][1]) / det,
            -(M[0][1] * M[2][2] - M[0][2] * M[2][1]) / det,
            (M[0][1] * M[1][2] - M[0][2] * M[1][1]) / det};
}

}  // namespace

Field neumann_trace_raw(const Field& u, double s) {
    const Grid& g = u.grid();
    const double h = g.spacing();
    const std::array<double, 3> ys{0.5 * h, h, 2.0 * h};
    const double eps = 0.05;

    // D(y) = y^(1-2s) dw/dy at three heights, then extrapolate y -> 0 with
    // the model D(y) = A + B y^(2-2s) + C y^2 (the leading corrections of
    // the s-harmonic expansion).
    std::array<std::vector<double>, 3> D;
    for (int i = 0; i < 3; ++i) {
        const Field wp = poisson_extend(u, ys[i] * (1.0 + eps), s);
        const Field wm = poisson_extend(u, ys[i] * (1.0 - eps), s);
        D[i].resize(g.size());
        const double scale = std::pow(ys[i], 1.0 - 2.0 * s) / (2.0 * ys[i] * eps);
        for (std::size_t j = 0; j < g.size(); ++j)
            D[i][j] = scale * (wp[j] - wm[j]);
    }
    std::array<std::array<double, 3>, 3> M;
    for (int i = 0; i < 3; ++i)
        M[i] = {1.0, std::pow(ys[i], 2.0 - 2.0 * s), ys[i] * ys[i]};
    const auto r = first_row_inverse(M);

    std::vector<double> A(g.size());
    double maxD = 0.0, maxA = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        A[j] = r[0] * D[0][j] + r[1] * D[1][j] + r[2] * D[2][j];
        for (int i = 0; i < 3; ++i) maxD = std::max(maxD, std::abs(D[i][j]));
        maxA = std::max(maxA, std::abs(A[j]));
    }
    if (maxA > 20.0 * maxD + 1e-300)
        throw ConvergenceError("Neumann-trace extrapolation diverged");
    return Field(g, std::move(A));
}

Field neumann_trace(const Field& u, double s) {
    return scale(neumann_trace_raw(u, s), -extension_constant(s));
}

double calibrate_extension_constant(double s, const Grid& grid, double tol) {
    const Field u = Field::sample(grid, [](const std::array<double, 3>& x) {
        const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        return std::exp(-r2 / 2.0);
    });
    const Field fl = fractional_laplacian(u, s);
    const Field raw = neumann_trace_raw(u, s);
    // fl ~ -k_s * raw, so project.
    const double measured = -inner(raw, fl) / inner(raw, raw);
    const double expected = extension_constant(s);
    if (std::abs(measured / expected - 1.0) > tol)
        throw CalibrationError("extension constant disagrees with Neumann oracle",
                               expected, measured);
    return measured;
}

}  // namespace fracground
