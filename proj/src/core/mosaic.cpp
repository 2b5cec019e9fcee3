//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file core/mosaic.cpp
//! Counter-based random rotations. Every draw is a pure function of
//! (seed, stream, counter) so results never depend on call order.
//---------------------------------------------------------------------------//
#include <cmath>
#include <numbers>

#include "xtrace/core/model.hpp"
#include "xtrace/error.hpp"

namespace xtrace
{
namespace
{
constexpr std::uint64_t mosaic_stream = 0x6D6F736169630000ull;  // "mosaic"
constexpr std::uint64_t orientation_stream = 0x6F7269656E740000ull;  // "orient"

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
double uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
    std::uint64_t const bits = mix64(mix64(seed ^ stream) + counter);
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}
}  // namespace

//---------------------------------------------------------------------------//
MosaicDomainSet
generate_mosaic_rotations(std::uint64_t seed, double spread_deg, std::size_t count)
{
    if (count == 0)
    {
        throw InvalidArgument("mosaic domain count must be >= 1");
    }
    if (!(spread_deg >= 0) || !std::isfinite(spread_deg))
    {
        throw InvalidArgument("mosaic spread must be finite and >= 0");
    }
    double const spread_rad = spread_deg * std::numbers::pi / 180.0;

    MosaicDomainSet result;
    result.spread_deg = spread_deg;
    result.seed = seed;
    result.rotations.clear();
    result.rotations.reserve(count);
    for (std::size_t d = 0; d < count; ++d)
    {
        std::uint64_t const base = 3 * static_cast<std::uint64_t>(d);
        double const cos_polar = 1.0 - 2.0 * uniform(seed, mosaic_stream, base);
        double const azimuth = 2.0 * std::numbers::pi * uniform(seed, mosaic_stream, base + 1);
        double const angle = spread_rad * uniform(seed, mosaic_stream, base + 2);

        double const sin_polar = std::sqrt(std::fmax(0.0, 1.0 - cos_polar * cos_polar));
        Vec3 const axis{sin_polar * std::cos(azimuth), sin_polar * std::sin(azimuth), cos_polar};
        result.rotations.push_back(axis_angle_rotation(axis, angle));
    }
    return result;
}

Mat3 random_rotation(std::uint64_t seed)
{
    // Shoemake's uniform unit quaternion.
    double const u1 = uniform(seed, orientation_stream, 0);
    double const u2 = uniform(seed, orientation_stream, 1);
    double const u3 = uniform(seed, orientation_stream, 2);
    double const two_pi = 2.0 * std::numbers::pi;
    double const s1 = std::sqrt(1.0 - u1);
    double const s2 = std::sqrt(u1);
    double const x = s1 * std::sin(two_pi * u2);
    double const y = s1 * std::cos(two_pi * u2);
    double const z = s2 * std::sin(two_pi * u3);
    double const w = s2 * std::cos(two_pi * u3);

    return {{Vec3{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
             Vec3{2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
             Vec3{2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}}};
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
