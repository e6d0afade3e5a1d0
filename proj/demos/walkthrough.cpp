// Minimal tour of the library: build the averaging operator in a small
// representation, decompose it, and look at its spectrum.

#include <cstdio>

#include "quaqua/quaqua.hpp"

using namespace quaqua;

int main() {
    const Irrep rep(2);  // the 5-dimensional representation

    const CMat zhat = evaluate(quaquaversal_element(), rep);
    std::printf("averaging operator on H_%d, trace %.6f\n", rep.dim(), zhat.trace().real());

    const Partition part = Partition::build(rep);
    std::printf("joint eigenspace dims: (%d, %d, %d, %d)\n", part.dims[0], part.dims[1],
                part.dims[2], part.dims[3]);

    const StructureReport structure = structure_report(block_grid(zhat, part));
    std::printf("structure residuals: upper %.2e, hermiticity %.2e, zero-block %.2e\n",
                structure.upper_residual, structure.hermiticity_residual,
                structure.zero_block_residual);

    const SpectrumReport spectrum = block_spectrum(rep);
    std::printf("spectrum:\n");
    for (const EigCluster& c : spectrum.clusters)
        std::printf("  %.9f  x%d\n", c.value.real(), c.multiplicity);
    std::printf("spectral radius %.9f, gap %.9f\n", spectrum.spectral_radius, spectrum.gap);

    std::printf("exact generation-3 moment residual: %.2e\n", moment_residual(rep, 3));
    return 0;
}
