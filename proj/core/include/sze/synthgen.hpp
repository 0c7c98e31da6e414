#pragma once

#include "sze/graph.hpp"

namespace sze {

struct GeneratorConfig {
    int n = 0;
    int num_clusters = 0;
    double eta1 = 0.0;  // inter-cluster spurious-edge probability
    double eta2 = 0.0;  // intra-cluster edge-drop probability
    std::uint64_t seed = 0;

    int cluster_dim() const { return num_clusters > 0 ? n / num_clusters : 0; }
    void validate() const;
};

struct GeneratedGraph {
    Graph g;                  // noisy planted-cluster graph
    Graph gt;                 // noiseless union of cliques on the same blocks
    std::vector<int> labels;  // block id per vertex, -1 for leftover vertices
};

// Shuffles the vertices, carves num_clusters disjoint consecutive blocks of
// floor(n/num_clusters), makes every block a clique with each internal edge
// dropped independently with probability eta2, and adds each remaining pair
// as an edge with probability eta1.
GeneratedGraph generate(const GeneratorConfig& cfg);

// Every absent pair gains a weight-1 edge independently with the given
// probability; existing edges are untouched.
Graph perturb(const Graph& g, double noise_probability, std::uint64_t seed);

}  // namespace sze
