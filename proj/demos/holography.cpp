// Shift-with-merge maps: the state count grows with the volume (all bits)
// while the number of equivalence classes grows only with the boundary.

#include <cstdio>

#include "ontolab/info_loss.hpp"

int main() {
  using namespace ontolab::info_loss;
  std::printf("%8s %10s %10s %10s %12s\n", "volume", "boundary", "states", "classes", "log2 classes");
  for (unsigned v : {8u, 12u, 16u, 20u}) {
    for (unsigned b : {2u, 4u, 6u}) {
      const FunctionalGraph g = shift_with_merge(v, b);
      const Quotient q = equivalence_classes(g);
      unsigned bits = 0;
      while ((std::size_t{1} << bits) < q.num_classes) ++bits;
      std::printf("%8u %10u %10zu %10zu %12u\n", v, b, g.size(), q.num_classes, bits);
    }
  }
  return 0;
}
