#include "sze/spectral.hpp"

#include <algorithm>
#include <cmath>

#if defined(SZE_HAVE_LAPACKE)
#include <lapacke.h>
#else
#include <Eigen/Eigenvalues>
#endif

namespace sze {

void SpectralSignature::validate(SpectrumKind kind) const {
    if (eigs.empty()) throw contract_error("signature must not be empty");
    for (std::size_t i = 1; i < eigs.size(); ++i)
        if (eigs[i] < eigs[i - 1]) throw contract_error("signature must be ascending");
    if (kind == SpectrumKind::laplacian) {
        if (std::abs(eigs.front()) > 1e-8)
            throw contract_error("Laplacian spectrum must start at 0");
        if (eigs.front() < -1e-8) throw contract_error("Laplacian eigenvalue below 0");
    }
}

namespace {

std::vector<double> symmetric_eigenvalues(Eigen::MatrixXd m) {
    const int n = static_cast<int>(m.rows());
    std::vector<double> eigs(n);
#if defined(SZE_HAVE_LAPACKE)
    const int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', n, m.data(), n, eigs.data());
    if (info != 0) throw error("dsyev failed with info=" + std::to_string(info));
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw error("eigensolver failed");
    for (int i = 0; i < n; ++i) eigs[i] = solver.eigenvalues()(i);
#endif
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

SpectralSignature sign_matrix(Eigen::MatrixXd w, SpectrumKind kind) {
    const int n = static_cast<int>(w.rows());
    if (kind == SpectrumKind::laplacian) {
        Eigen::VectorXd deg = w.rowwise().sum();
        w = -w;
        for (int i = 0; i < n; ++i) w(i, i) = deg(i);
    }
    SpectralSignature s;
    s.source_n = n;
    s.eigs = symmetric_eigenvalues(std::move(w));
    return s;
}

}  // namespace

SpectralSignature spectrum(const Graph& g, SpectrumKind kind) {
    if (g.n() < 1) throw contract_error("spectrum: empty graph");
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (int u = 0; u < g.n(); ++u)
        g.for_neighbours(u, [&](int v, float weight) { w(u, v) = weight; });
    return sign_matrix(std::move(w), kind);
}

SpectralSignature spectrum(const ReducedGraph& r, SpectrumKind kind) {
    if (r.k < 1) throw contract_error("spectrum: empty reduced graph");
    return sign_matrix(r.weights, kind);
}

int default_head_count(const SpectralSignature& s1, const SpectralSignature& s2) {
    return static_cast<int>(std::min(s1.eigs.size(), s2.eigs.size())) / 2;
}

double spectral_distance(const SpectralSignature& s1, const SpectralSignature& s2, int l) {
    const SpectralSignature& shorter = s1.eigs.size() <= s2.eigs.size() ? s1 : s2;
    const SpectralSignature& longer = s1.eigs.size() <= s2.eigs.size() ? s2 : s1;
    const int n1 = static_cast<int>(shorter.eigs.size());
    const int n2 = static_cast<int>(longer.eigs.size());
    if (n1 == 0) throw contract_error("spectral_distance: empty signature");
    if (l < 0 || l > n1) throw contract_error("spectral_distance: l out of range");

    double sum = 0.0;
    for (int i = 1; i <= l; ++i) sum += std::abs(longer.eigs[i - 1] - shorter.eigs[i - 1]);
    for (int i = l + 1; i <= n1; ++i)
        sum += std::abs(longer.eigs[i + n2 - n1 - 1] - shorter.eigs[i - 1]);
    return sum / n1;
}

}  // namespace sze
