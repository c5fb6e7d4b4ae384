#pragma once

// JSON diagram files and analysis reports.

#include <string>

#include <json.hpp>

#include "gstatics/complex.hpp"
#include "gstatics/dynamics.hpp"

namespace gstatics {

using Json = nlohmann::ordered_json;

struct DiagramFile {
  Diagram diagram;
  SpringConstants springs;
};

// Throws SchemaError on malformed documents (missing or unknown keys, wrong
// types, unknown cell ids). Rule violations are left to validate().
DiagramFile parse_diagram(const Json& doc);
DiagramFile parse_diagram(const std::string& text);
DiagramFile read_diagram(const std::string& path);

Json diagram_to_json(const Diagram& diagram, const SpringConstants& springs = {});
// Pretty-printed with shortest round-trip doubles and a trailing newline.
std::string dump(const Json& doc);

Json to_json(const Vector& v);
Json to_json(const Matrix& columns);  // list of columns

// Homology dimensions, Maxwell report, stress and mechanism bases, dual
// realizations, lift coefficients and genus bounds.
Json analyze(const Diagram& diagram, const Tolerance& tol = {});

}  // namespace gstatics
