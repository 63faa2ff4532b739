#include "fracground/io.hpp"

#include <cstdint>
#include <fstream>

namespace fracground {

namespace {

// The dump format is little-endian; this library targets little-endian
// hosts and writes native byte order.
template <class T>
void write_raw(std::ofstream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_raw(std::ifstream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void write_grid_dump(const std::filesystem::path& path, const Field& u,
                     double s) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path.string());
    write_raw<std::int64_t>(out, u.grid().dim);
    write_raw<std::int64_t>(out, u.grid().points_per_axis);
    write_raw<double>(out, u.grid().half_width);
    write_raw<double>(out, s);
    out.write(reinterpret_cast<const char*>(u.values().data()),
              static_cast<std::streamsize>(u.size() * sizeof(double)));
    if (!out) throw Error("write failed: " + path.string());
}

Field read_grid_dump(const std::filesystem::path& path, double* s_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path.string());
    const auto dim = read_raw<std::int64_t>(in);
    const auto n = read_raw<std::int64_t>(in);
    const auto L = read_raw<double>(in);
    const auto s = read_raw<double>(in);
    if (!in) throw Error("truncated dump header: " + path.string());
    const Grid g(static_cast<int>(dim), static_cast<int>(n), L);
    std::vector<double> vals(g.size());
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(double)));
    if (!in) throw Error("truncated dump payload: " + path.string());
    if (s_out) *s_out = s;
    return Field(g, std::move(vals));
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace fracground
