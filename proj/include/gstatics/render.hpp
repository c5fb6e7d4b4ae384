#pragma once

// Static SVG drawings of form and force diagrams.

#include <optional>
#include <string>

#include "gstatics/complex.hpp"
#include "gstatics/reciprocal.hpp"

namespace gstatics {

struct RenderOptions {
  std::optional<Vector> stress;     // colours form edges: tension red, compression blue
  std::optional<DualRealization> dual;  // dashed, drawn beside the form diagram
  std::optional<Vector> rotations;  // one value per edge, drawn as arcs at edge midpoints
  double width = 640;
};

// Layers are <g> elements with ids "form", "forces", "dual" and "rotations";
// the force layer is omitted when the stress is zero.
std::string render_svg(const Diagram& diagram, const RenderOptions& options = {});

}  // namespace gstatics
