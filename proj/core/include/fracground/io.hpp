#pragma once

#include <filesystem>
#include <string>

#include "fracground/grid.hpp"

namespace fracground {

// Binary field dump. Layout (little-endian):
//   int64  dim
//   int64  points_per_axis
//   double half_width
//   double s (fractional order the field was produced with; 0 if n/a)
//   double payload, row-major, n^dim entries
void write_grid_dump(const std::filesystem::path& path, const Field& u,
                     double s);

Field read_grid_dump(const std::filesystem::path& path,
                     double* s_out = nullptr);

// Write a whole text file (reports, CSV tables).
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace fracground
