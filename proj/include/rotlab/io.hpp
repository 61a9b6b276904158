#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace rotlab {

// Formats a double with 17 significant digits (round-trip safe).
std::string fmt17(double x);

// Atomic file write: temp file in the same directory, then rename.
void write_file_atomic(const std::string& path, const std::string& contents);

// RFC-4180-style CSV with a header row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_json(const std::string& path, const nlohmann::json& j);

// Minimal polyline plot of (x, y) traces; zero-dependency artifact.
void write_svg_polyline(const std::string& path, const std::vector<double>& xs,
                        const std::vector<double>& ys, const std::string& title);

}  // namespace rotlab
