#pragma once

#include <cstdint>
#include <span>

#include "hdcpd/types.hpp"

namespace hdcpd {

struct ClusterConfig {
    std::size_t max_iterations = 100;
    std::size_t restarts = 20;
    // Also seed with the n-1 temporal bipartitions {1..t} | {t+1..n}.
    bool include_split_inits = true;
    std::uint64_t rng_seed = 0;
};

struct ClusterResult {
    Labeling labeling;
    double objective = 0.0;
    std::size_t iterations_used = 0;
    std::size_t init_id = 0;
};

// lambda*(C1, C2) = sum_j (1 / 2|Cj|) sum over ordered pairs in Cj of
// delta^2. Throws EmptyClusterError if a cluster has no members.
double objective_lambda(const DissimilarityMatrix& d, const Labeling& labeling);

// Surrogate squared distance of point i to the cluster with the given
// members; may be negative for non-Euclidean dissimilarities.
double point_to_cluster(const DissimilarityMatrix& d, std::size_t i,
                        std::span<const std::size_t> members);

// 2-means by batch reassignment sweeps over several initializations,
// returning the best labeling by lambda* seen anywhere along the way.
ClusterResult two_means(const DissimilarityMatrix& d, const ClusterConfig& config);

}  // namespace hdcpd
