#pragma once

#include "stepstat/error.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace stepstat {

enum class NoiseShape { normal, lognormal };

inline const char* to_string(NoiseShape shape) {
    return shape == NoiseShape::normal ? "normal" : "lognormal";
}

inline NoiseShape parse_noise_shape(const std::string& text) {
    if (text == "normal") return NoiseShape::normal;
    if (text == "lognormal") return NoiseShape::lognormal;
    raise(errc::config, "unknown noise shape '" + text + "' (expected normal or lognormal)");
}

namespace detail {

// splitmix64; decorrelates per-stream seeds derived from one user seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform in (0,1], built from the top 53 bits so results do not depend on
// the standard library's distribution implementation.
inline double uniform_open_closed(std::mt19937_64& rng) {
    return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

// Standard normal draw via Box-Muller (cosine branch only, stateless).
inline double standard_normal(std::mt19937_64& rng) {
    const double u1 = uniform_open_closed(rng);
    const double u2 = uniform_open_closed(rng);
    constexpr double two_pi = 6.283185307179586476925286766559;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

// One duration draw with the requested mean and standard deviation.
// Normal draws are resampled while nonpositive; lognormal is moment-matched
// and positive by construction.
inline double noise_draw(std::mt19937_64& rng, NoiseShape shape, double mean, double stddev) {
    if (shape == NoiseShape::normal) {
        double v = mean + stddev * standard_normal(rng);
        while (!(v > 0.0)) {
            v = mean + stddev * standard_normal(rng);
        }
        return v;
    }
    const double ratio2 = (stddev * stddev) / (mean * mean);
    const double sigma_ln = std::sqrt(std::log1p(ratio2));
    const double mu_ln = std::log(mean) - 0.5 * sigma_ln * sigma_ln;
    return std::exp(mu_ln + sigma_ln * standard_normal(rng));
}

}  // namespace detail

}  // namespace stepstat
