//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/core/model.hpp
//! Crystal, detector and beam descriptions plus the pure geometric helpers
//! shared by all kernels.
//!
//! Units: Angstrom for cell edges, wavelengths and scattering vectors;
//! meters for detector geometry; radians internally (cell angles are stored
//! in degrees because that is how they are quoted).
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "linalg.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
// TYPES
//---------------------------------------------------------------------------//
//! Lattice parameters: edges in Angstrom, angles in degrees.
struct UnitCell
{
    double a = 0, b = 0, c = 0;
    double alpha = 90, beta = 90, gamma = 90;
};

//! Lab-frame crystal orientation matrix.
class Orientation
{
  public:
    Orientation() = default;
    //! Throws InvalidArgument unless `u` is a proper rotation within 1e-10.
    explicit Orientation(Mat3 const& u);

    Mat3 const& matrix() const { return u_; }

  private:
    Mat3 u_ = Mat3::identity();
};

//! Rotations of the mosaic blocks relative to the mean orientation.
struct MosaicDomainSet
{
    std::vector<Mat3> rotations{Mat3::identity()};
    double spread_deg = 0;
    std::optional<std::uint64_t> seed;  //!< Absent when given explicitly
};

//! Integer Miller triple used as a table key.
struct Miller
{
    int h = 0, k = 0, l = 0;
    friend bool operator==(Miller const&, Miller const&) = default;
};

struct MillerHash
{
    std::size_t operator()(Miller const& m) const noexcept
    {
        auto u = [](int v) { return static_cast<std::uint64_t>(static_cast<std::uint32_t>(v)); };
        std::uint64_t x = u(m.h) * 0x9E3779B97F4A7C15ull;
        x ^= u(m.k) + 0xBF58476D1CE4E5B9ull + (x << 6) + (x >> 2);
        x ^= u(m.l) + 0x94D049BB133111EBull + (x << 6) + (x >> 2);
        return static_cast<std::size_t>(x);
    }
};

//! Structure-factor amplitudes with a fallback for absent reflections.
struct StructureFactorTable
{
    std::unordered_map<Miller, double, MillerHash> entries;
    double default_f = 0;
};

struct CrystalModel
{
    UnitCell cell;
    Orientation orientation;
    std::array<int, 3> n_cells{1, 1, 1};  //!< Unit cells along a, b, c
    MosaicDomainSet mosaic;
    StructureFactorTable sf_table;
};

//! Single flat pixel array.
struct DetectorPanel
{
    std::size_t slow_pixels = 0;
    std::size_t fast_pixels = 0;
    double pixel_size = 0;  //!< [m]
    double distance = 0;  //!< [m], sample to panel along the beam
    std::array<double, 2> beam_center{0, 0};  //!< (slow, fast) [pixels]
    Vec3 fast_axis{1, 0, 0};
    Vec3 slow_axis{0, 1, 0};

    std::size_t pixel_count() const { return slow_pixels * fast_pixels; }
};

struct SpectrumSample
{
    double wavelength = 0;  //!< [A]
    double weight = 1;
};

struct BeamSpectrum
{
    std::vector<SpectrumSample> samples;
    double fluence = 0;  //!< [photons / m^2]
    bool polarization_on = false;
    Vec3 beam_direction{0, 0, 1};
};

struct BackgroundPoint
{
    double stol = 0;  //!< sin(theta)/lambda [1/A]
    double f_bg = 0;
};

//! Piecewise-linear amorphous scattering amplitude versus sin(theta)/lambda.
struct BackgroundProfile
{
    std::vector<BackgroundPoint> points;
};

//---------------------------------------------------------------------------//
// VALIDATION
//---------------------------------------------------------------------------//
// Each throws the matching error type with a message naming the field.
void validate(UnitCell const& cell);
void validate(MosaicDomainSet const& mosaic);
void validate(StructureFactorTable const& table);
void validate(CrystalModel const& crystal);
void validate(DetectorPanel const& panel);
void validate(BeamSpectrum const& spectrum);
void validate(BackgroundProfile const& profile);

//---------------------------------------------------------------------------//
// OPERATIONS
//---------------------------------------------------------------------------//
//! Real-space basis with a along x and b in the x-y plane (rows a, b, c).
Mat3 real_basis(UnitCell const& cell);

//! Rows a*, b*, c* with a_i . a*_j = delta_ij.
Mat3 reciprocal_basis(UnitCell const& cell);

//! Seeded mosaic block rotations; see docs/mosaic.md for the generator.
MosaicDomainSet
generate_mosaic_rotations(std::uint64_t seed, double spread_deg, std::size_t count);

//! Uniformly distributed random rotation drawn from the same generator.
Mat3 random_rotation(std::uint64_t seed);

//! Lab position [m] of a point inside pixel (slow, fast).
Vec3 pixel_lab_position(DetectorPanel const& panel,
                        std::size_t slow,
                        std::size_t fast,
                        double sub_slow,
                        double sub_fast,
                        Vec3 const& beam_direction = {0, 0, 1});

//! Fractional Miller indices of scattering vector q [1/A] in mosaic domain.
Vec3 fractional_miller(CrystalModel const& crystal, std::size_t mosaic_index, Vec3 const& q);

//! Per-domain rotated real-space basis rows: mosaic * orientation * basis.
std::vector<Mat3> rotated_bases(CrystalModel const& crystal);

//! Point-pixel solid angle [sr] with obliquity correction.
double solid_angle(DetectorPanel const& panel, Vec3 const& pixel_position);

//! Thomson factor for an unpolarized beam, or 1 when disabled.
double polarization_factor(BeamSpectrum const& spectrum, double two_theta);

//! Amplitude of the nearest integer reflection (half away from zero).
double lookup_f(StructureFactorTable const& table, double h, double k, double l);

//! Linear interpolation clamped to the end points.
double interp_background_f(BackgroundProfile const& profile, double stol);

//---------------------------------------------------------------------------//
}  // namespace xtrace
