#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string_view>

namespace eqcoalg {

/// SplitMix64 finalizer; used to derive independent sub-seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Sub-seed for stream `stream` of `seed`. Distinct streams of one seed
/// never share a sub-seed in practice.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Seeded generator with portable distributions.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The distributions are implemented here because the standard
/// library ones are implementation-defined.
class Rng {
public:
    static constexpr std::string_view kName = "mt19937_64/splitmix64-v1";

    explicit Rng(std::uint64_t seed) : base_(mix64(seed)), engine_(base_) {}

    /// Independent generator for stream `stream`; does not advance *this.
    Rng split(std::uint64_t stream) const { return Rng(derive_seed(base_, stream), 0); }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; one draw consumes two engine outputs.
    double normal() {
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    Rng(std::uint64_t raw_seed, int) : base_(raw_seed), engine_(raw_seed) {}

    std::uint64_t base_;
    std::mt19937_64 engine_;
};

}  // namespace eqcoalg
