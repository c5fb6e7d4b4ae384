#pragma once

// Shipped example diagrams.

#include <string>
#include <utility>
#include <vector>

#include "gstatics/complex.hpp"

namespace gstatics::fixtures {

// Unit square with a center vertex joined to all four corners (5 V, 8 E, 5 F).
// Edges are ordered outer edges first, then diagonals.
Diagram boxed();
// Four-bar unit square, inner and outer face.
Diagram square();
Diagram triangle();
// One bar, no faces.
Diagram single_edge();
// Rectangle with two interior joints; one self stress and one mechanism.
Diagram reciprocal_pair();
// Five-joint truss on three supports with open-ended reaction edges.
Diagram open_truss();
Diagram triangulated_sphere();
// 3x3 quadrilateral grid on the torus.
Diagram torus_grid();
// Torus grid with six squares split (9 V, 24 E, 9 self stresses).
Diagram torus_lift();
// Torus grid with two squares split (9 V, 20 E, 5 self stresses).
Diagram torus_pentagon();
// Torus embedding with 6 V, 13 E, 7 F and 4 self stresses.
Diagram torus_k33();
// Every square of the torus grid split into two triangles.
Diagram triangulated_torus();
// Box with two tapered tunnels (genus 2, 24 V, 48 E).
Diagram genus_two();

std::vector<std::pair<std::string, Diagram>> all();
std::vector<std::pair<std::string, Diagram>> closed_surfaces();
Diagram by_name(const std::string& name);

}  // namespace gstatics::fixtures
