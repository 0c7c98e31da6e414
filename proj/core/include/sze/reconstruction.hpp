#pragma once

#include "sze/summarizer.hpp"

namespace sze {

// n x n symmetric matrix of reals in [0,1] with zero diagonal: the
// similarity matrix of a reconstructed graph, or the weighted adjacency of
// an input graph.
using DensityMatrix = Eigen::MatrixXd;

// Throws contract_error on asymmetry, non-zero diagonal, or out-of-range
// entries.
void validate_density_matrix(const DensityMatrix& a);

// Expands a reduced graph back to n vertices: cross-class entries take the
// class-pair weight, same-class entries the class internal density, C0
// rows/columns stay zero.
DensityMatrix blow_up(const ReducedGraph& r, const std::vector<double>& internal);

// The weighted adjacency of g as a DensityMatrix.
DensityMatrix to_density_matrix(const Graph& g);

// (Σ_i Σ_j |a(i,j) − b(i,j)|^p)^(1/p) over all ordered pairs including the
// diagonal; normalized divides by n^(2/p) turning it into a per-entry root
// mean deviation. The reduction is chunked so the result is independent of
// the worker count.
double reconstruction_error(const DensityMatrix& a, const DensityMatrix& b, double p,
                            bool normalized);

// Binary dump: 8-byte header "SZEDMv1\0", n as 64-bit little-endian, then
// row-major 32-bit floats.
void dump_density_matrix(const DensityMatrix& a, const std::string& path);
DensityMatrix load_density_matrix(const std::string& path);

}  // namespace sze
