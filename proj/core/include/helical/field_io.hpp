#pragma once

/// @file field_io.hpp
/// @brief Field dumps: CSV rows (x, y, value) and raw little-endian f64 in
/// node order with a JSON sidecar {n, radius, kappa, time, name}.

#include <filesystem>
#include <memory>
#include <string>

#include "helical/grid.hpp"

namespace helical {

struct FieldMeta {
    double kappa = 1.0;
    double time = 0.0;
    std::string name;
};

void write_field_csv(const ScalarField2D& field, const std::filesystem::path& path);

/// Writes `path` (raw values) and `path` with extension .json (sidecar).
void write_field_raw(const ScalarField2D& field, const FieldMeta& meta,
                     const std::filesystem::path& path);

struct LoadedField {
    ScalarField2D field;
    FieldMeta meta;
};

/// Reads a raw dump back on a disk domain rebuilt from the sidecar. Throws
/// std::runtime_error on malformed input.
LoadedField read_field_raw(const std::filesystem::path& path);

/// Same, reusing a domain that must match the sidecar's n and radius.
LoadedField read_field_raw(const std::filesystem::path& path,
                           std::shared_ptr<const GridDomain> domain);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace helical
