#pragma once

#include "sze/summarizer.hpp"

namespace sze {

enum class SpectrumKind {
    laplacian,  // combinatorial Laplacian L = D - W (first eigenvalue 0)
    adjacency,  // eigenvalues of W itself
};

struct SpectralSignature {
    std::vector<double> eigs;  // ascending
    int source_n = 0;          // node count of the graph this signs

    // ascending order; for Laplacian spectra the head must be 0 within 1e-8
    // and no entry may fall below -1e-8
    void validate(SpectrumKind kind = SpectrumKind::laplacian) const;
};

// Full ascending eigenvalue list via a dense symmetric solve.
SpectralSignature spectrum(const Graph& g, SpectrumKind kind = SpectrumKind::laplacian);
SpectralSignature spectrum(const ReducedGraph& r, SpectrumKind kind = SpectrumKind::laplacian);

// floor(n1/2) with n1 the shorter signature: half head, half tail.
int default_head_count(const SpectralSignature& s1, const SpectralSignature& s2);

// Head-vs-head for the first l eigenvalues, tail-vs-tail for the remaining
// n1-l, normalized by the shorter length n1. Signatures may be passed in
// either order.
double spectral_distance(const SpectralSignature& s1, const SpectralSignature& s2, int l);

}  // namespace sze
