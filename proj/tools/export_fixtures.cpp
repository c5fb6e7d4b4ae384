#include <filesystem>
#include <fstream>
#include <iostream>

#include "gstatics/fixtures.hpp"
#include "gstatics/io.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "fixtures";
  std::filesystem::create_directories(dir);
  for (const auto& [name, dg] : gstatics::fixtures::all()) {
    std::ofstream(dir / (name + ".json"), std::ios::binary) << gstatics::dump(gstatics::diagram_to_json(dg));
    std::cout << name << "\n";
  }
}
