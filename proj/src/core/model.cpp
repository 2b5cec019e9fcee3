//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file core/model.cpp
//---------------------------------------------------------------------------//
#include "xtrace/core/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "xtrace/error.hpp"

namespace xtrace
{
namespace
{
constexpr double deg_to_rad = std::numbers::pi / 180.0;
constexpr double rotation_tolerance = 1e-10;
constexpr double axis_tolerance = 1e-12;

double metric_determinant(UnitCell const& cell)
{
    double const ca = std::cos(cell.alpha * deg_to_rad);
    double const cb = std::cos(cell.beta * deg_to_rad);
    double const cg = std::cos(cell.gamma * deg_to_rad);
    return 1.0 - ca * ca - cb * cb - cg * cg + 2.0 * ca * cb * cg;
}

bool finite_vec(Vec3 const& v)
{
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

// Round half away from zero, saturating at the int range.
int round_index(double v)
{
    double const r = std::round(v);
    return static_cast<int>(std::clamp(r, -2147483648.0, 2147483647.0));
}
}  // namespace

//---------------------------------------------------------------------------//
Orientation::Orientation(Mat3 const& u) : u_(u)
{
    if (!(rotation_defect(u) <= rotation_tolerance))
    {
        throw InvalidArgument("orientation matrix is not a proper rotation");
    }
}

//---------------------------------------------------------------------------//
void validate(UnitCell const& cell)
{
    if (!(cell.a > 0 && cell.b > 0 && cell.c > 0) || !std::isfinite(cell.a)
        || !std::isfinite(cell.b) || !std::isfinite(cell.c))
    {
        throw InvalidCell("cell edge lengths must be positive and finite");
    }
    for (double angle : {cell.alpha, cell.beta, cell.gamma})
    {
        if (!(angle > 0 && angle < 180))
        {
            throw InvalidCell("cell angles must lie strictly between 0 and 180 degrees");
        }
    }
    if (!(metric_determinant(cell) > 0))
    {
        throw InvalidCell("cell angles do not form a valid cell (metric determinant <= 0)");
    }
}

void validate(MosaicDomainSet const& mosaic)
{
    if (mosaic.rotations.empty())
    {
        throw InvalidArgument("mosaic domain set is empty");
    }
    if (!(mosaic.spread_deg >= 0) || !std::isfinite(mosaic.spread_deg))
    {
        throw InvalidArgument("mosaic spread must be non-negative");
    }
    for (std::size_t i = 0; i < mosaic.rotations.size(); ++i)
    {
        if (!(rotation_defect(mosaic.rotations[i]) <= rotation_tolerance))
        {
            throw InvalidArgument("mosaic rotation " + std::to_string(i)
                                  + " is not a proper rotation");
        }
    }
}

void validate(StructureFactorTable const& table)
{
    if (!(table.default_f >= 0) || !std::isfinite(table.default_f))
    {
        throw InvalidArgument("default structure factor must be finite and >= 0");
    }
    for (auto const& [hkl, f] : table.entries)
    {
        if (!(f >= 0) || !std::isfinite(f))
        {
            throw InvalidArgument("structure factor for (" + std::to_string(hkl.h) + ","
                                  + std::to_string(hkl.k) + "," + std::to_string(hkl.l)
                                  + ") must be finite and >= 0");
        }
    }
}

void validate(CrystalModel const& crystal)
{
    validate(crystal.cell);
    for (int n : crystal.n_cells)
    {
        if (n < 1)
        {
            throw InvalidArgument("cell counts per edge must be >= 1");
        }
    }
    validate(crystal.mosaic);
    validate(crystal.sf_table);
}

void validate(DetectorPanel const& panel)
{
    if (panel.slow_pixels == 0 || panel.fast_pixels == 0)
    {
        throw InvalidGeometry("panel must have at least one pixel along each axis");
    }
    if (!(panel.pixel_size > 0) || !std::isfinite(panel.pixel_size))
    {
        throw InvalidGeometry("pixel size must be positive");
    }
    if (!(panel.distance > 0) || !std::isfinite(panel.distance))
    {
        throw InvalidGeometry("detector distance must be positive");
    }
    if (!std::isfinite(panel.beam_center[0]) || !std::isfinite(panel.beam_center[1]))
    {
        throw InvalidGeometry("beam center must be finite");
    }
    if (!finite_vec(panel.fast_axis) || !finite_vec(panel.slow_axis)
        || std::abs(norm(panel.fast_axis) - 1.0) > axis_tolerance
        || std::abs(norm(panel.slow_axis) - 1.0) > axis_tolerance)
    {
        throw InvalidGeometry("detector axes must be unit vectors");
    }
    if (std::abs(dot(panel.fast_axis, panel.slow_axis)) > axis_tolerance)
    {
        throw InvalidGeometry("detector fast and slow axes must be orthogonal");
    }
}

void validate(BeamSpectrum const& spectrum)
{
    if (spectrum.samples.empty())
    {
        throw InvalidArgument("spectrum needs at least one sample");
    }
    bool any_positive = false;
    for (auto const& s : spectrum.samples)
    {
        if (!(s.wavelength > 0) || !std::isfinite(s.wavelength))
        {
            throw InvalidArgument("wavelengths must be positive");
        }
        if (!(s.weight >= 0) || !std::isfinite(s.weight))
        {
            throw InvalidArgument("spectrum weights must be finite and >= 0");
        }
        any_positive = any_positive || s.weight > 0;
    }
    if (!any_positive)
    {
        throw InvalidArgument("spectrum needs at least one sample with positive weight");
    }
    if (!(spectrum.fluence >= 0) || !std::isfinite(spectrum.fluence))
    {
        throw InvalidArgument("fluence must be finite and >= 0");
    }
    if (!finite_vec(spectrum.beam_direction)
        || std::abs(norm(spectrum.beam_direction) - 1.0) > axis_tolerance)
    {
        throw InvalidGeometry("beam direction must be a unit vector");
    }
}

void validate(BackgroundProfile const& profile)
{
    auto const& pts = profile.points;
    if (pts.size() < 2)
    {
        throw InvalidArgument("background profile needs at least two points");
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        if (!std::isfinite(pts[i].stol) || !(pts[i].stol >= 0))
        {
            throw InvalidArgument("background stol values must be finite and >= 0");
        }
        if (!(pts[i].f_bg >= 0) || !std::isfinite(pts[i].f_bg))
        {
            throw InvalidArgument("background amplitudes must be finite and >= 0");
        }
        if (i > 0 && !(pts[i].stol > pts[i - 1].stol))
        {
            throw InvalidArgument("background stol values must be strictly increasing");
        }
    }
}

//---------------------------------------------------------------------------//
Mat3 real_basis(UnitCell const& cell)
{
    validate(cell);
    double const ca = std::cos(cell.alpha * deg_to_rad);
    double const cb = std::cos(cell.beta * deg_to_rad);
    double const cg = std::cos(cell.gamma * deg_to_rad);
    double const sg = std::sin(cell.gamma * deg_to_rad);

    double const cy = (ca - cb * cg) / sg;
    double const cz = std::sqrt(std::fmax(0.0, 1.0 - cb * cb - cy * cy));
    return {{Vec3{cell.a, 0, 0},
             Vec3{cell.b * cg, cell.b * sg, 0},
             Vec3{cell.c * cb, cell.c * cy, cell.c * cz}}};
}

Mat3 reciprocal_basis(UnitCell const& cell)
{
    Mat3 const real = real_basis(cell);
    Vec3 const& a = real.rows[0];
    Vec3 const& b = real.rows[1];
    Vec3 const& c = real.rows[2];
    double const volume = dot(a, cross(b, c));
    if (!(volume > 0))
    {
        throw InvalidCell("degenerate unit cell");
    }
    return {{cross(b, c) / volume, cross(c, a) / volume, cross(a, b) / volume}};
}

//---------------------------------------------------------------------------//
Vec3 pixel_lab_position(DetectorPanel const& panel,
                        std::size_t slow,
                        std::size_t fast,
                        double sub_slow,
                        double sub_fast,
                        Vec3 const& beam_direction)
{
    if (slow >= panel.slow_pixels || fast >= panel.fast_pixels)
    {
        throw OutOfBounds("pixel (" + std::to_string(slow) + ", " + std::to_string(fast)
                          + ") outside " + std::to_string(panel.slow_pixels) + "x"
                          + std::to_string(panel.fast_pixels) + " panel");
    }
    double const ds
        = (static_cast<double>(slow) + sub_slow - panel.beam_center[0]) * panel.pixel_size;
    double const df
        = (static_cast<double>(fast) + sub_fast - panel.beam_center[1]) * panel.pixel_size;
    return panel.distance * beam_direction + ds * panel.slow_axis + df * panel.fast_axis;
}

std::vector<Mat3> rotated_bases(CrystalModel const& crystal)
{
    Mat3 const basis = real_basis(crystal.cell);
    Mat3 const& u = crystal.orientation.matrix();
    std::vector<Mat3> result;
    result.reserve(crystal.mosaic.rotations.size());
    for (Mat3 const& m : crystal.mosaic.rotations)
    {
        Mat3 const rot = m * u;
        // Rows of the result are the rotated a, b, c vectors.
        result.push_back(transpose(rot * transpose(basis)));
    }
    return result;
}

Vec3 fractional_miller(CrystalModel const& crystal, std::size_t mosaic_index, Vec3 const& q)
{
    if (mosaic_index >= crystal.mosaic.rotations.size())
    {
        throw OutOfBounds("mosaic index " + std::to_string(mosaic_index) + " out of range");
    }
    Mat3 const basis = real_basis(crystal.cell);
    Mat3 const rot = crystal.mosaic.rotations[mosaic_index] * crystal.orientation.matrix();
    Mat3 const rotated = transpose(rot * transpose(basis));
    return rotated * q;
}

double solid_angle(DetectorPanel const& panel, Vec3 const& pixel_position)
{
    double const r = norm(pixel_position);
    if (!(r > 0))
    {
        throw InvalidGeometry("solid angle of a zero-length pixel position");
    }
    Vec3 const normal = cross(panel.fast_axis, panel.slow_axis);
    double const cos_obliquity = std::abs(dot(pixel_position, normal)) / r;
    return panel.pixel_size * panel.pixel_size / (r * r) * cos_obliquity;
}

double polarization_factor(BeamSpectrum const& spectrum, double two_theta)
{
    if (!spectrum.polarization_on)
    {
        return 1.0;
    }
    double const c = std::cos(two_theta);
    return 0.5 * (1.0 + c * c);
}

double lookup_f(StructureFactorTable const& table, double h, double k, double l)
{
    Miller const key{round_index(h), round_index(k), round_index(l)};
    auto const it = table.entries.find(key);
    return it == table.entries.end() ? table.default_f : it->second;
}

double interp_background_f(BackgroundProfile const& profile, double stol)
{
    auto const& pts = profile.points;
    if (stol <= pts.front().stol)
    {
        return pts.front().f_bg;
    }
    if (stol >= pts.back().stol)
    {
        return pts.back().f_bg;
    }
    auto const upper = std::upper_bound(
        pts.begin(), pts.end(), stol, [](double s, BackgroundPoint const& p) {
            return s < p.stol;
        });
    auto const lower = upper - 1;
    double const t = (stol - lower->stol) / (upper->stol - lower->stol);
    return lower->f_bg + t * (upper->f_bg - lower->f_bg);
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
