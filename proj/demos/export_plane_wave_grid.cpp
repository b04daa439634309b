// Writes a single-direction (+z, q = 1) sheet state as grid JSON, the input
// format of `fermion-wave` with params.grid_file.

#include <fstream>
#include <iostream>

#include <json.hpp>

#include "ontolab/fermion_sheets.hpp"
#include "ontolab/io/sheet_json.hpp"

int main(int argc, char** argv) {
  using namespace ontolab::fermion;
  const char* path = argc > 1 ? argv[1] : "plane_wave_grid.json";
  GridSpec g;
  g.n_theta = 24;
  g.n_phi = 48;
  g.n_rho = 65;
  SheetGrid grid(g);
  grid.add({Vec3::UnitZ(), 0.0, 1.0, 0.0, 1.0});
  std::ofstream out(path);
  out << ontolab::io::samples_to_json(grid.samples()).dump() << '\n';
  std::cout << "wrote " << grid.samples().size() << " samples to " << path << '\n';
  return out.good() ? 0 : 1;
}
