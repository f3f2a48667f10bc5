// Loads a Z2 cocycle, shows that it does not lift through Z4 -> Z2, then
// that its sum with itself lifts through the mod 2 fusion and how many
// inequivalent lifts there are.
//
//   hyperbolic_demo [cocycle-file]

#include <iostream>

#include "obstruct/all.hpp"

int main(int argc, char** argv) {
  using namespace obs;
  const std::string path = argc > 1 ? argv[1] : SAMPLES_DIR "/data/mobius_rp2.coc";
  try {
    const BundleCocycle s = load_cocycle(path);
    const CentralExtension ext = builtin_extension("z4_over_z2");

    const auto single = obstruction_class(s, ext);
    std::cout << "single bundle: kappa " << (single.trivial ? "trivial" : "NONTRIVIAL") << '\n';

    const auto doubled = hyperbolic_obstruction(s, ext);
    std::cout << "doubled bundle: kappa " << (doubled.fused.trivial ? "trivial" : "NONTRIVIAL") << ", fused group of order "
              << doubled.extension.fused.total().order() << '\n';
    const auto& E = doubled.extension.fused.total();
    const auto& edges = s.base->simplices_of_dim(1);
    for (std::size_t i = 0; i < edges.size(); ++i)
      std::cout << "  " << to_string(edges[i]) << " -> " << E.name_of(doubled.fused.global_lift->values[i]) << '\n';
    std::cout << "inequivalent lifts: " << hyperbolic_structure_count(s, ext) << '\n';
    return single.trivial ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 3;
  }
}
