#include "hdcpd/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hdcpd/rng.hpp"

namespace hdcpd {

namespace {

// Pairwise squared dissimilarities, flattened row-major.
std::vector<double> squared_entries(const DissimilarityMatrix& d) {
    const std::size_t n = d.size();
    std::vector<double> sq(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = d(i, j);
            sq[i * n + j] = v * v;
        }
    }
    return sq;
}

struct SweepSums {
    std::size_t count[2] = {0, 0};
    double within[2] = {0.0, 0.0};          // ordered-pair sum of delta^2 inside each cluster
    std::vector<double> point_sum[2];       // point_sum[c][i] = sum_k in c of delta^2(i, k)

    double lambda() const {
        double out = 0.0;
        for (int c = 0; c < 2; ++c) {
            out += within[c] / (2.0 * static_cast<double>(count[c]));
        }
        return out;
    }
};

SweepSums accumulate(const std::vector<double>& sq, const std::vector<std::uint8_t>& labels) {
    const std::size_t n = labels.size();
    SweepSums s;
    s.point_sum[0].assign(n, 0.0);
    s.point_sum[1].assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) ++s.count[labels[k]];
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = sq.data() + i * n;
        double acc0 = 0.0, acc1 = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            if (labels[k] == 0) {
                acc0 += row[k];
            } else {
                acc1 += row[k];
            }
        }
        s.point_sum[0][i] = acc0;
        s.point_sum[1][i] = acc1;
        s.within[labels[i]] += (labels[i] == 0) ? acc0 : acc1;
    }
    return s;
}

}  // namespace

double objective_lambda(const DissimilarityMatrix& d, const Labeling& labeling) {
    if (labeling.size() != d.size()) {
        throw LengthMismatchError("objective_lambda: labeling size mismatch");
    }
    if (labeling.constant()) {
        throw EmptyClusterError("objective_lambda: a cluster is empty");
    }
    auto sq = squared_entries(d);
    return accumulate(sq, labeling.labels).lambda();
}

double point_to_cluster(const DissimilarityMatrix& d, std::size_t i,
                        std::span<const std::size_t> members) {
    if (members.empty()) {
        throw EmptyClusterError("point_to_cluster: empty member set");
    }
    if (i >= d.size()) {
        throw IndexOutOfRangeError("point_to_cluster: index out of range");
    }
    const double m = static_cast<double>(members.size());
    double first = 0.0;
    for (auto k : members) {
        double v = d(i, k);
        first += v * v;
    }
    double second = 0.0;
    for (auto k : members) {
        for (auto l : members) {
            double v = d(k, l);
            second += v * v;
        }
    }
    return first / m - second / (2.0 * m * m);
}

namespace {

struct Best {
    double objective = std::numeric_limits<double>::infinity();
    std::vector<std::uint8_t> labels;
    std::size_t init_id = 0;
    std::size_t iterations = 0;

    void offer(double obj, const std::vector<std::uint8_t>& lab, std::size_t init,
               std::size_t iters) {
        if (obj < objective) {
            objective = obj;
            labels = lab;
            init_id = init;
            iterations = iters;
        }
    }
};

// One batch sweep: compute d0 against both current clusters, reassign all
// points simultaneously, repair an emptied cluster by keeping the point
// farthest from the receiving cluster.
std::vector<std::uint8_t> reassign(const SweepSums& s, const std::vector<std::uint8_t>& labels) {
    const std::size_t n = labels.size();
    std::vector<std::uint8_t> next(n);
    std::vector<double> d0(n), d1(n);
    const double c0 = static_cast<double>(s.count[0]);
    const double c1 = static_cast<double>(s.count[1]);
    const double within0 = s.within[0] / (2.0 * c0 * c0);
    const double within1 = s.within[1] / (2.0 * c1 * c1);
    std::size_t moved_to[2] = {0, 0};
    for (std::size_t i = 0; i < n; ++i) {
        d0[i] = s.point_sum[0][i] / c0 - within0;
        d1[i] = s.point_sum[1][i] / c1 - within1;
        if (d0[i] < d1[i]) {
            next[i] = 0;
        } else if (d1[i] < d0[i]) {
            next[i] = 1;
        } else {
            next[i] = labels[i];  // ties keep the current assignment
        }
        ++moved_to[next[i]];
    }
    for (int empty = 0; empty < 2; ++empty) {
        if (moved_to[empty] != 0) continue;
        // All points joined the other cluster; keep behind the one farthest
        // from it.
        const auto& dist_other = (empty == 0) ? d1 : d0;
        std::size_t pick = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (dist_other[i] > dist_other[pick]) pick = i;
        }
        next[pick] = static_cast<std::uint8_t>(empty);
    }
    return next;
}

void run_init(const std::vector<double>& sq, std::vector<std::uint8_t> labels, std::size_t init_id,
              std::size_t max_iterations, Best& best) {
    std::size_t sweeps = 0;
    SweepSums sums = accumulate(sq, labels);
    best.offer(sums.lambda(), labels, init_id, sweeps);
    for (std::size_t it = 0; it < max_iterations; ++it) {
        auto next = reassign(sums, labels);
        ++sweeps;
        if (next == labels) break;
        labels = std::move(next);
        sums = accumulate(sq, labels);
        best.offer(sums.lambda(), labels, init_id, sweeps);
    }
}

}  // namespace

ClusterResult two_means(const DissimilarityMatrix& d, const ClusterConfig& config) {
    const std::size_t n = d.size();
    if (n < 2) {
        throw DegenerateInputError("two_means: need n >= 2");
    }
    if (config.max_iterations < 1) {
        throw BadConfigError("two_means: max_iterations must be >= 1");
    }
    if (config.restarts == 0 && !config.include_split_inits) {
        throw BadConfigError("two_means: no initializations configured");
    }

    auto sq = squared_entries(d);
    Best best;
    std::size_t init_id = 0;

    if (config.include_split_inits) {
        for (std::size_t t = 1; t < n; ++t) {
            std::vector<std::uint8_t> labels(n, 1);
            std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(t), 0);
            run_init(sq, std::move(labels), init_id, config.max_iterations, best);
            ++init_id;
        }
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t r = 0; r < config.restarts; ++r) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        Rng rng(derive_seed(config.rng_seed, "two_means.init", init_id));
        rng.shuffle(perm.begin(), perm.end());
        std::vector<std::uint8_t> labels(n, 1);
        for (std::size_t k = 0; k < n / 2; ++k) labels[perm[k]] = 0;
        run_init(sq, std::move(labels), init_id, config.max_iterations, best);
        ++init_id;
    }

    ClusterResult out;
    out.labeling = Labeling::from_labels(best.labels);
    out.objective = best.objective;
    out.iterations_used = best.iterations;
    out.init_id = best.init_id;
    return out;
}

}  // namespace hdcpd
