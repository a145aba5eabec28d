#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace iscc {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Derives a child seed from a root seed and a stream tag. Substreams with
/// different tags are statistically independent.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t tag) {
    return splitmix64(splitmix64(root) ^ splitmix64(tag * 0x9e3779b97f4a7c15ULL + 1));
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
    return derive_seed(derive_seed(root, a), b);
}

/// Deterministic random stream. All randomized operations in the library take
/// an explicit Rng so that identical seeds give bit-identical results.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

    /// Standard normal via Box-Muller (stdlib distributions are not
    /// bit-portable across implementations).
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    double exponential(double rate) {
        double u = 0.0;
        while (u <= 0.0) u = uniform();
        return -std::log(u) / rate;
    }

    /// Circularly-symmetric complex Gaussian with E[|c|^2] = var.
    std::complex<double> cgaussian(double var = 1.0) {
        double s = std::sqrt(var * 0.5);
        return {s * gaussian(), s * gaussian()};
    }

    /// Independent child stream; does not advance this stream.
    Rng substream(std::uint64_t tag) const { return Rng(derive_seed(seed_, tag)); }

private:
    std::uint64_t seed_;
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace iscc
