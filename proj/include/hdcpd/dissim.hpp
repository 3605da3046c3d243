#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hdcpd/types.hpp"

namespace hdcpd {

// Coordinate transform psi and outer transform h for the generalized
// distance rho(x, y) = h((1/d) sum_q psi((x_q - y_q)^2)). The catalog is
// closed so that named presets stay serializable.
enum class PsiKind { identity, exp_decay, power };
enum class HKind { identity, root };

struct TransformPair {
    PsiKind psi = PsiKind::identity;
    double psi_p = 2.0;  // power: psi(t) = t^(p/2)
    HKind h = HKind::identity;
    double h_p = 2.0;  // root: h(t) = t^(1/p)

    double psi_eval(double t) const;
    double h_eval(double t) const;
    std::string id() const;
};

// Disjoint coordinate groups covering {0..d-1}.
struct BlockPartition {
    std::vector<std::vector<std::size_t>> blocks;

    static BlockPartition singletons(std::size_t d);
    static BlockPartition validated(std::vector<std::vector<std::size_t>> blocks, std::size_t d);

    std::size_t block_count() const { return blocks.size(); }
    std::size_t dimension() const;
    bool empty() const { return blocks.empty(); }

    bool operator==(const BlockPartition&) const = default;
};

enum class BaseKind { euclidean, rho, rho_block };

// Selects a base distance and whether to wrap it in the leave-two-out
// average over the data cloud (delta0 / delta_{h,psi} / block variant).
struct DissimilaritySpec {
    BaseKind kind = BaseKind::euclidean;
    TransformPair transform{};
    BlockPartition partition{};
    bool leave_out_averaging = false;

    static DissimilaritySpec euclidean();
    static DissimilaritySpec delta0();
    static DissimilaritySpec delta1();
    static DissimilaritySpec delta1_block(BlockPartition partition);

    std::string id() const;
};

// Base distance rho(x, y); symmetric, zero at x == y.
double base_distance(std::span<const double> x, std::span<const double> y,
                     const DissimilaritySpec& spec);

// Full pairwise dissimilarity matrix. With leave_out_averaging,
// delta(i, j) = (1/(n-2)) sum_{k != i,j} |rho(i,k) - rho(j,k)|, which needs
// n >= 3.
DissimilarityMatrix dissimilarity_matrix(const DataSequence& data, const DissimilaritySpec& spec);

// Sample distance correlation of two coordinate series, in [0, 1].
// A constant series has zero distance variance and dcor 0 by convention.
double distance_correlation(std::span<const double> u, std::span<const double> v);

// d x d matrix of pairwise distance correlations between coordinates.
Matrix pairwise_distance_correlations(const DataSequence& data);

struct BlockFormation {
    BlockPartition partition;
    std::string method;  // "exact" (d <= 16) or "greedy"
    double matched_weight = 0.0;
};

// Pairs coordinates so the total within-pair distance correlation is
// maximized; odd d leaves one singleton block. Only block_size 2 is
// supported.
BlockFormation form_blocks(const DataSequence& data, std::size_t block_size);

}  // namespace hdcpd
