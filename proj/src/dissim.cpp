#include "hdcpd/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hdcpd {

double TransformPair::psi_eval(double t) const {
    switch (psi) {
        case PsiKind::identity:
            return t;
        case PsiKind::exp_decay:
            return 1.0 - std::exp(-std::sqrt(t));
        case PsiKind::power:
            return std::pow(t, 0.5 * psi_p);
    }
    return t;
}

double TransformPair::h_eval(double t) const {
    switch (h) {
        case HKind::identity:
            return t;
        case HKind::root:
            return std::pow(t, 1.0 / h_p);
    }
    return t;
}

std::string TransformPair::id() const {
    std::string out = "psi=";
    switch (psi) {
        case PsiKind::identity: out += "id"; break;
        case PsiKind::exp_decay: out += "expdecay"; break;
        case PsiKind::power: out += "pow" + std::to_string(psi_p); break;
    }
    out += ",h=";
    switch (h) {
        case HKind::identity: out += "id"; break;
        case HKind::root: out += "root" + std::to_string(h_p); break;
    }
    return out;
}

BlockPartition BlockPartition::singletons(std::size_t d) {
    BlockPartition out;
    out.blocks.resize(d);
    for (std::size_t q = 0; q < d; ++q) out.blocks[q] = {q};
    return out;
}

BlockPartition BlockPartition::validated(std::vector<std::vector<std::size_t>> blocks,
                                         std::size_t d) {
    std::vector<bool> seen(d, false);
    std::size_t covered = 0;
    for (const auto& b : blocks) {
        if (b.empty()) throw Error("block partition contains an empty block");
        for (auto q : b) {
            if (q >= d) throw IndexOutOfRangeError("block coordinate out of range");
            if (seen[q]) throw Error("block partition repeats a coordinate");
            seen[q] = true;
            ++covered;
        }
    }
    if (covered != d) throw Error("block partition must cover all coordinates");
    BlockPartition out;
    out.blocks = std::move(blocks);
    return out;
}

std::size_t BlockPartition::dimension() const {
    std::size_t d = 0;
    for (const auto& b : blocks) d += b.size();
    return d;
}

DissimilaritySpec DissimilaritySpec::euclidean() {
    DissimilaritySpec s;
    s.kind = BaseKind::euclidean;
    s.leave_out_averaging = false;
    return s;
}

DissimilaritySpec DissimilaritySpec::delta0() {
    DissimilaritySpec s;
    s.kind = BaseKind::euclidean;
    s.leave_out_averaging = true;
    return s;
}

DissimilaritySpec DissimilaritySpec::delta1() {
    DissimilaritySpec s;
    s.kind = BaseKind::rho;
    s.transform.psi = PsiKind::exp_decay;
    s.transform.h = HKind::identity;
    s.leave_out_averaging = true;
    return s;
}

DissimilaritySpec DissimilaritySpec::delta1_block(BlockPartition partition) {
    DissimilaritySpec s = delta1();
    s.kind = BaseKind::rho_block;
    s.partition = std::move(partition);
    return s;
}

std::string DissimilaritySpec::id() const {
    std::string base;
    switch (kind) {
        case BaseKind::euclidean: base = "euclidean"; break;
        case BaseKind::rho: base = "rho(" + transform.id() + ")"; break;
        case BaseKind::rho_block:
            base = "rho_block(" + transform.id() + ",b=" + std::to_string(partition.block_count()) + ")";
            break;
    }
    return leave_out_averaging ? "madd[" + base + "]" : base;
}

namespace {

double euclidean_norm_diff(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t q = 0; q < x.size(); ++q) {
        double diff = x[q] - y[q];
        s += diff * diff;
    }
    return std::sqrt(s);
}

}  // namespace

double base_distance(std::span<const double> x, std::span<const double> y,
                     const DissimilaritySpec& spec) {
    if (x.size() != y.size()) {
        throw DimensionMismatchError("base_distance: vectors of different dimension");
    }
    switch (spec.kind) {
        case BaseKind::euclidean:
            return euclidean_norm_diff(x, y);
        case BaseKind::rho: {
            double s = 0.0;
            for (std::size_t q = 0; q < x.size(); ++q) {
                double diff = x[q] - y[q];
                s += spec.transform.psi_eval(diff * diff);
            }
            return spec.transform.h_eval(s / static_cast<double>(x.size()));
        }
        case BaseKind::rho_block: {
            const auto& blocks = spec.partition.blocks;
            if (spec.partition.dimension() != x.size()) {
                throw DimensionMismatchError("base_distance: partition does not match dimension");
            }
            double s = 0.0;
            for (const auto& b : blocks) {
                double sq = 0.0;
                for (auto q : b) {
                    double diff = x[q] - y[q];
                    sq += diff * diff;
                }
                s += spec.transform.psi_eval(sq);
            }
            return spec.transform.h_eval(s / static_cast<double>(blocks.size()));
        }
    }
    throw Error("base_distance: unknown kind");
}

DissimilarityMatrix dissimilarity_matrix(const DataSequence& data, const DissimilaritySpec& spec) {
    const std::size_t n = data.n();
    if (spec.leave_out_averaging && n < 3) {
        throw TooFewPointsError("leave-out averaging needs n >= 3");
    }
    DissimilarityMatrix base = DissimilarityMatrix::zeros(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            base.set(i, j, base_distance(data.row(i), data.row(j), spec));
        }
    }
    if (!spec.leave_out_averaging) {
        return base;
    }
    DissimilarityMatrix out = DissimilarityMatrix::zeros(n);
    const double inv = 1.0 / static_cast<double>(n - 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == i || k == j) continue;
                s += std::abs(base(i, k) - base(j, k));
            }
            out.set(i, j, s * inv);
        }
    }
    return out;
}

namespace {

// Double-centered pairwise absolute-difference matrix of a series.
std::vector<double> centered_distance_matrix(std::span<const double> u) {
    const std::size_t n = u.size();
    std::vector<double> a(n * n);
    std::vector<double> rowmean(n, 0.0);
    double grand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            double v = std::abs(u[i] - u[j]);
            a[i * n + j] = v;
            s += v;
        }
        rowmean[i] = s / static_cast<double>(n);
        grand += s;
    }
    grand /= static_cast<double>(n) * static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] += grand - rowmean[i] - rowmean[j];
        }
    }
    return a;
}

double mean_product(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s / static_cast<double>(a.size());
}

double dcor_from_products(double cov2, double var_u, double var_v) {
    if (var_u <= 0.0 || var_v <= 0.0) return 0.0;
    double r2 = std::max(0.0, cov2) / std::sqrt(var_u * var_v);
    return std::min(1.0, std::sqrt(r2));
}

}  // namespace

double distance_correlation(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) {
        throw LengthMismatchError("distance_correlation: series of different length");
    }
    if (u.size() < 2) {
        throw LengthMismatchError("distance_correlation: need n >= 2");
    }
    auto a = centered_distance_matrix(u);
    auto b = centered_distance_matrix(v);
    return dcor_from_products(mean_product(a, b), mean_product(a, a), mean_product(b, b));
}

Matrix pairwise_distance_correlations(const DataSequence& data) {
    const std::size_t d = data.dim();
    const std::size_t n = data.n();
    if (n < 2) throw LengthMismatchError("pairwise_distance_correlations: need n >= 2");
    Matrix out(d, d, 0.0);

    // Centered matrices are kept for a chunk of coordinates at a time so the
    // working set stays bounded when d * n^2 is large.
    const std::size_t budget_doubles = 64u * 1024 * 1024;  // 512 MB
    std::size_t chunk = std::max<std::size_t>(1, budget_doubles / (2 * n * n));
    chunk = std::min(chunk, d);

    std::vector<std::vector<double>> cache_i, cache_j;
    std::vector<double> var(d, 0.0);

    auto build = [&](std::size_t lo, std::size_t hi, std::vector<std::vector<double>>& dst) {
        dst.resize(hi - lo);
        for (std::size_t q = lo; q < hi; ++q) {
            auto col = data.column(q);
            dst[q - lo] = centered_distance_matrix(col);
        }
    };

    for (std::size_t lo = 0; lo < d; lo += chunk) {
        std::size_t hi = std::min(d, lo + chunk);
        build(lo, hi, cache_i);
        for (std::size_t q = lo; q < hi; ++q) {
            var[q] = mean_product(cache_i[q - lo], cache_i[q - lo]);
            out(q, q) = var[q] > 0.0 ? 1.0 : 0.0;
        }
        // pairs inside the chunk
        for (std::size_t q = lo; q < hi; ++q) {
            for (std::size_t r = q + 1; r < hi; ++r) {
                double c = mean_product(cache_i[q - lo], cache_i[r - lo]);
                double v = dcor_from_products(c, var[q], var[r]);
                out(q, r) = v;
                out(r, q) = v;
            }
        }
        // pairs against later chunks
        for (std::size_t lo2 = hi; lo2 < d; lo2 += chunk) {
            std::size_t hi2 = std::min(d, lo2 + chunk);
            build(lo2, hi2, cache_j);
            for (std::size_t r = lo2; r < hi2; ++r) {
                var[r] = mean_product(cache_j[r - lo2], cache_j[r - lo2]);
            }
            for (std::size_t q = lo; q < hi; ++q) {
                for (std::size_t r = lo2; r < hi2; ++r) {
                    double c = mean_product(cache_i[q - lo], cache_j[r - lo2]);
                    double v = dcor_from_products(c, var[q], var[r]);
                    out(q, r) = v;
                    out(r, q) = v;
                }
            }
        }
    }
    return out;
}

namespace {

struct Edge {
    double w;
    std::size_t i, j;
};

// Exhaustive max-weight matching over subsets, d <= 16. Handles odd d by
// leaving the best leftover coordinate unmatched.
std::vector<std::pair<std::size_t, std::size_t>> exact_matching(const Matrix& w, std::size_t d,
                                                                double* total) {
    const std::size_t full = (std::size_t{1} << d) - 1;
    std::vector<double> best(full + 1, 0.0);
    std::vector<int> choice(full + 1, -1);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        std::size_t bits = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (bits < 2) continue;
        std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::size_t rest = mask & (mask - 1);  // mask without i
        if (bits % 2 != 0) continue;
        double b = -1.0;
        int pick = -1;
        for (std::size_t sub = rest; sub != 0; sub &= sub - 1) {
            std::size_t j = static_cast<std::size_t>(__builtin_ctzll(sub));
            double cand = w(i, j) + best[rest & ~(std::size_t{1} << j)];
            if (cand > b) {
                b = cand;
                pick = static_cast<int>(j);
            }
        }
        best[mask] = b;
        choice[mask] = pick;
    }

    std::size_t start = full;
    double total_w = 0.0;
    if (d % 2 != 0) {
        // choose the leftover whose exclusion maximizes the matched total
        double b = -1.0;
        std::size_t leftover = 0;
        for (std::size_t v = 0; v < d; ++v) {
            double cand = best[full & ~(std::size_t{1} << v)];
            if (cand > b) {
                b = cand;
                leftover = v;
            }
        }
        start = full & ~(std::size_t{1} << leftover);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::size_t mask = start;
    while (mask != 0) {
        std::size_t i = static_cast<std::size_t>(__builtin_ctzll(mask));
        std::size_t j = static_cast<std::size_t>(choice[mask]);
        pairs.emplace_back(i, j);
        total_w += w(i, j);
        mask &= ~(std::size_t{1} << i);
        mask &= ~(std::size_t{1} << j);
    }
    if (total) *total = total_w;
    return pairs;
}

// Greedy weight-descending pairing for larger d.
std::vector<std::pair<std::size_t, std::size_t>> greedy_matching(const Matrix& w, std::size_t d,
                                                                 double* total) {
    std::vector<Edge> edges;
    edges.reserve(d * (d - 1) / 2);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            edges.push_back({w(i, j), i, j});
        }
    }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.w != b.w) return a.w > b.w;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<bool> used(d, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    double total_w = 0.0;
    for (const auto& e : edges) {
        if (used[e.i] || used[e.j]) continue;
        used[e.i] = true;
        used[e.j] = true;
        pairs.emplace_back(e.i, e.j);
        total_w += e.w;
        if (pairs.size() * 2 + 1 >= d) break;
    }
    if (total) *total = total_w;
    return pairs;
}

}  // namespace

BlockFormation form_blocks(const DataSequence& data, std::size_t block_size) {
    if (block_size != 2) {
        throw UnsupportedBlockSizeError("only block size 2 is supported");
    }
    const std::size_t d = data.dim();
    if (d < 2) {
        throw DimensionMismatchError("form_blocks: need d >= 2");
    }
    Matrix w = pairwise_distance_correlations(data);

    BlockFormation out;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (d <= 16) {
        pairs = exact_matching(w, d, &out.matched_weight);
        out.method = "exact";
    } else {
        pairs = greedy_matching(w, d, &out.matched_weight);
        out.method = "greedy";
    }

    std::vector<bool> used(d, false);
    std::vector<std::vector<std::size_t>> blocks;
    for (auto [i, j] : pairs) {
        if (i > j) std::swap(i, j);
        blocks.push_back({i, j});
        used[i] = true;
        used[j] = true;
    }
    for (std::size_t q = 0; q < d; ++q) {
        if (!used[q]) blocks.push_back({q});
    }
    std::sort(blocks.begin(), blocks.end());
    out.partition = BlockPartition::validated(std::move(blocks), d);
    return out;
}

}  // namespace hdcpd
