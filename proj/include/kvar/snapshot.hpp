#pragma once

#include <string>

#include "kvar/field.hpp"

namespace kvar {

// Container file: one JSON header line (grid, valence, byte order, element
// type) followed by the raw component array, row-major, slots outermost,
// grid axes innermost in axis order, little-endian binary64.
void save_snapshot(const TensorField& field, const std::string& path);
TensorField load_snapshot(const std::string& path);

}  // namespace kvar
