#pragma once

#include <string>

#include "sepflow/fields.hpp"
#include "sepflow/grid.hpp"

namespace sepflow {

// Fields serialize to CSV with header `r,theta,ur,utheta`, row-major with
// theta fastest, 17 significant digits (lossless double round-trip).
// `comment` lines, when given, are emitted first, prefixed with '#'.
void write_field_csv(const std::string& path, const VelocityField& f, const AnnulusGrid& g,
                     const std::string& comment = "");
VelocityField read_field_csv(const std::string& path, const AnnulusGrid& g);

// Grid metadata descriptor (manifold kind, curvature, radii, node counts).
void write_grid_json(const std::string& path, const AnnulusGrid& g);
AnnulusGrid read_grid_json(const std::string& path);

std::string format_full(Real v);  // shortest 17-significant-digit form

}  // namespace sepflow
