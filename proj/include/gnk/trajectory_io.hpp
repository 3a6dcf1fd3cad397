#pragma once
// Line-oriented trajectory text format (see FORMATS.md):
//
//   trajectory n=4 k=3 mode=affine pieces=2
//   breakpoints 0 0.5 1
//   coef point=1 coord=1 piece=1 : 0 1
//   ...
//
// Indices are 1-based; coefficients are in ascending degree of the local
// piece parameter u. Numbers are written in shortest round-trip form, so a
// parse of a serialization is bit-identical.

#include <string>
#include <string_view>

#include "gnk/trajectory.hpp"

namespace gnk::geometry {

std::string format_trajectory(const Trajectory& traj);

/// Throws ParseError on malformed input and the Trajectory validation errors
/// on inconsistent data. Every (point, coord, piece) must appear exactly once.
Trajectory parse_trajectory(std::string_view text);

}  // namespace gnk::geometry
