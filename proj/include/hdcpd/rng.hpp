#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace hdcpd {

// Philox4x32-10 counter-based generator. Streams with distinct stream ids
// occupy disjoint counter blocks, so per-segment / per-replication streams
// drawn from the same seed never overlap.
class Philox {
public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        ctr_[0] = 0;
        ctr_[1] = 0;
        ctr_[2] = static_cast<std::uint32_t>(stream);
        ctr_[3] = static_cast<std::uint32_t>(stream >> 32);
    }

    std::uint32_t next_u32() {
        if (pos_ == 4) {
            buf_ = block(ctr_, key_);
            if (++ctr_[0] == 0) ++ctr_[1];
            pos_ = 0;
        }
        return buf_[pos_++];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        std::uint64_t hi = next_u32();
        return (hi << 32) | lo;
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> x,
                                              std::array<std::uint32_t, 2> k) {
        constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = static_cast<std::uint64_t>(m0) * x[0];
            std::uint64_t p1 = static_cast<std::uint64_t>(m1) * x[2];
            std::array<std::uint32_t, 4> y;
            y[0] = static_cast<std::uint32_t>(p1 >> 32) ^ x[1] ^ k[0];
            y[1] = static_cast<std::uint32_t>(p1);
            y[2] = static_cast<std::uint32_t>(p0 >> 32) ^ x[3] ^ k[1];
            y[3] = static_cast<std::uint32_t>(p0);
            x = y;
            k[0] += w0;
            k[1] += w1;
        }
        return x;
    }

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> ctr_{};
    std::array<std::uint32_t, 4> buf_{};
    int pos_ = 4;
};

// Deterministic sub-seed derivation: FNV-1a over the tag bytes mixed with
// the base seed and an index, finalized splitmix-style.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t index = 0) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xff;
            h *= 0x100000001b3ull;
        }
    };
    mix(base);
    for (char c : tag) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    mix(index);
    h ^= h >> 30;
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
    h *= 0x94d049bb133111ebull;
    h ^= h >> 31;
    return h;
}

// Distributions on top of Philox. Transforms are written out explicitly so a
// fixed (seed, stream) reproduces identical draws across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : gen_(seed, stream) {}

    double uniform() { return gen_.next_double(); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        // Box-Muller on (0, 1] x [0, 1).
        double u = 1.0 - gen_.next_double();
        double v = gen_.next_double();
        double r = std::sqrt(-2.0 * std::log(u));
        double a = 2.0 * M_PI * v;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double cauchy() { return std::tan(M_PI * (gen_.next_double() - 0.5)); }

    double laplace() {
        double u = gen_.next_double() - 0.5;
        double s = u < 0 ? -1.0 : 1.0;
        return -s * std::log1p(-2.0 * std::abs(u));
    }

    // Marsaglia-Tsang, unit scale.
    double gamma(double shape) {
        if (shape < 1.0) {
            double u = 1.0 - gen_.next_double();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        double d = shape - 1.0 / 3.0;
        double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x = normal();
            double t = 1.0 + c * x;
            if (t <= 0.0) continue;
            double v = t * t * t;
            double u = 1.0 - gen_.next_double();
            if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
                return d * v;
            }
        }
    }

    double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

    double student_t(double dof) { return normal() / std::sqrt(chi_squared(dof) / dof); }

    // Geometric with support 1, 2, ... ; success probability p.
    std::uint64_t geometric1(double p) {
        if (p >= 1.0) return 1;
        double u = gen_.next_double();
        double k = std::floor(std::log1p(-u) / std::log1p(-p));
        return 1 + static_cast<std::uint64_t>(k < 0 ? 0 : k);
    }

    // Unbiased integer in [0, n) by rejection.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % n;
        for (;;) {
            std::uint64_t v = gen_.next_u64();
            if (v < limit) return v % n;
        }
    }

    template <class RandomIt>
    void shuffle(RandomIt first, RandomIt last) {
        auto n = static_cast<std::uint64_t>(last - first);
        for (std::uint64_t i = n; i > 1; --i) {
            std::uint64_t j = uniform_below(i);
            std::swap(first[i - 1], first[j]);
        }
    }

private:
    Philox gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hdcpd
