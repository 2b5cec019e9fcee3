//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernels/kernels.cpp
//---------------------------------------------------------------------------//
#include "xtrace/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include "xtrace/exec/patterns.hpp"

namespace xtrace
{
namespace
{
constexpr double sin_limit_threshold = 1e-12;

void require_shape(DetectorPanel const& panel, StageImage const& out, char const* kernel)
{
    if (out.slow() != panel.slow_pixels || out.fast() != panel.fast_pixels)
    {
        throw ShapeError(std::string(kernel) + ": output is " + std::to_string(out.slow()) + "x"
                         + std::to_string(out.fast()) + " but panel is "
                         + std::to_string(panel.slow_pixels) + "x"
                         + std::to_string(panel.fast_pixels));
    }
}

// Throws NumericalFault naming the lowest non-finite pixel.
template<class T>
void require_finite(Executor const& exec, char const* kernel, std::span<T const> values)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::size_t const bad = parallel_reduce(
        exec,
        kernel,
        RangePolicy(0, values.size()),
        [values](std::size_t i) { return std::isfinite(values[i]) ? none : i; },
        [](std::size_t a, std::size_t b) { return std::min(a, b); },
        none);
    if (bad != none)
    {
        throw NumericalFault(kernel, bad);
    }
}

double weight_sum(BeamSpectrum const& spectrum)
{
    double total = 0;
    for (auto const& s : spectrum.samples)
    {
        total += s.weight;
    }
    return total;
}

double two_theta_of(Vec3 const& unit_out, Vec3 const& unit_in)
{
    return std::acos(std::clamp(dot(unit_out, unit_in), -1.0, 1.0));
}

//---------------------------------------------------------------------------//
// Spots intensity of one pixel. Sub-pixel sample points sit at the centres
// of an oversample x oversample grid.
double spots_pixel(SpotsContext const& ctx, std::size_t slow, std::size_t fast)
{
    int const os = ctx.oversample;
    Vec3 const& beam = ctx.spectrum.beam_direction;
    StructureFactorTable const& table = *ctx.sf_table;

    double accum = 0;
    for (int ss = 0; ss < os; ++ss)
    {
        for (int fs = 0; fs < os; ++fs)
        {
            Vec3 const pos = pixel_lab_position(ctx.panel,
                                                slow,
                                                fast,
                                                (ss + 0.5) / os,
                                                (fs + 0.5) / os,
                                                beam);
            Vec3 const out_dir = pos / norm(pos);
            double const omega = solid_angle(ctx.panel, pos);
            double const polar = polarization_factor(ctx.spectrum, two_theta_of(out_dir, beam));

            double spectral = 0;
            for (auto const& sample : ctx.spectrum.samples)
            {
                Vec3 const q = (out_dir - beam) / sample.wavelength;
                double domains = 0;
                for (Mat3 const& basis : ctx.bases)
                {
                    Vec3 const hkl = basis * q;
                    double const f_cell = lookup_f(table, hkl.x, hkl.y, hkl.z);
                    double const f_latt = lattice_transform(ctx.n_cells, hkl.x, hkl.y, hkl.z);
                    double const amplitude = f_cell * f_latt;
                    domains += amplitude * amplitude;
                }
                spectral += sample.weight * domains;
            }
            accum += omega * polar * spectral;
        }
    }
    double const steps = weight_sum(ctx.spectrum) * static_cast<double>(ctx.bases.size())
                         * static_cast<double>(os * os);
    return ctx.r_e_sqr * ctx.spectrum.fluence * accum / steps;
}

double background_pixel(BackgroundContext const& ctx, std::size_t slow, std::size_t fast)
{
    Vec3 const& beam = ctx.spectrum.beam_direction;
    Vec3 const pos = pixel_lab_position(ctx.panel, slow, fast, 0.5, 0.5, beam);
    Vec3 const out_dir = pos / norm(pos);
    double const omega = solid_angle(ctx.panel, pos);
    double const polar = polarization_factor(ctx.spectrum, two_theta_of(out_dir, beam));

    double spectral = 0;
    for (auto const& sample : ctx.spectrum.samples)
    {
        double const stol = 0.5 * norm(out_dir - beam) / sample.wavelength;
        double const f_bg = interp_background_f(ctx.profile, stol);
        spectral += sample.weight * f_bg * f_bg;
    }
    return ctx.r_e_sqr * ctx.spectrum.fluence * polar * omega * ctx.thickness_factor * spectral
           / weight_sum(ctx.spectrum);
}
}  // namespace

//---------------------------------------------------------------------------//
SpotsContext make_spots_context(CrystalModel const& crystal,
                                DetectorPanel const& panel,
                                BeamSpectrum const& spectrum,
                                int oversample)
{
    validate(crystal);
    validate(panel);
    validate(spectrum);
    if (oversample < 1)
    {
        throw InvalidArgument("oversample must be >= 1");
    }
    SpotsContext ctx;
    ctx.bases = rotated_bases(crystal);
    ctx.n_cells = crystal.n_cells;
    ctx.sf_table = std::make_shared<StructureFactorTable const>(crystal.sf_table);
    ctx.panel = panel;
    ctx.spectrum = spectrum;
    ctx.oversample = oversample;
    return ctx;
}

BackgroundContext make_background_context(BackgroundProfile const& profile,
                                          DetectorPanel const& panel,
                                          BeamSpectrum const& spectrum,
                                          double thickness_factor)
{
    validate(profile);
    validate(panel);
    validate(spectrum);
    if (!(thickness_factor >= 0) || !std::isfinite(thickness_factor))
    {
        throw InvalidArgument("background thickness factor must be finite and >= 0");
    }
    return {profile, panel, spectrum, thickness_factor, r_e_sqr};
}

//---------------------------------------------------------------------------//
double sincg(double x, int n)
{
    double const s = std::sin(x);
    if (std::abs(s) < sin_limit_threshold)
    {
        return n * std::cos(n * x) / std::cos(x);
    }
    return std::sin(n * x) / s;
}

double lattice_transform(std::array<int, 3> const& n_cells, double h, double k, double l)
{
    constexpr double pi = std::numbers::pi;
    return sincg(pi * h, n_cells[0]) * sincg(pi * k, n_cells[1]) * sincg(pi * l, n_cells[2]);
}

double lattice_transform(CrystalModel const& crystal, double h, double k, double l)
{
    return lattice_transform(crystal.n_cells, h, k, l);
}

//---------------------------------------------------------------------------//
void nanobragg_spots(Executor const& exec, SpotsContext const& ctx, StageImage& out)
{
    require_shape(ctx.panel, out, spots_label);
    if (!ctx.sf_table || ctx.bases.empty() || ctx.oversample < 1)
    {
        throw InvalidArgument("spots context is incomplete");
    }
    std::span<float> const pixels = out.data();
    std::size_t const fast_pixels = ctx.panel.fast_pixels;
    parallel_for(exec, spots_label, RangePolicy(0, pixels.size()), [&ctx, pixels, fast_pixels](std::size_t p) {
        pixels[p] = static_cast<float>(spots_pixel(ctx, p / fast_pixels, p % fast_pixels));
    });
    require_finite<float>(exec, spots_label, pixels);
}

void add_background(Executor const& exec, BackgroundContext const& ctx, StageImage& out)
{
    require_shape(ctx.panel, out, background_label);
    std::span<float> const pixels = out.data();
    std::size_t const fast_pixels = ctx.panel.fast_pixels;
    parallel_for(exec, background_label, RangePolicy(0, pixels.size()), [&ctx, pixels, fast_pixels](std::size_t p) {
        pixels[p] = static_cast<float>(background_pixel(ctx, p / fast_pixels, p % fast_pixels));
    });
    require_finite<float>(exec, background_label, pixels);
}

void add_background(Executor const& exec,
                    BackgroundProfile const& profile,
                    DetectorPanel const& panel,
                    BeamSpectrum const& spectrum,
                    double thickness_factor,
                    StageImage& out)
{
    add_background(exec, make_background_context(profile, panel, spectrum, thickness_factor), out);
}

void add_array(Executor const& exec, AccumImage& lhs, StageImage const& rhs)
{
    if (!lhs.same_shape(rhs))
    {
        throw ShapeError(std::string(add_array_label) + ": lhs is " + std::to_string(lhs.slow())
                         + "x" + std::to_string(lhs.fast()) + " but rhs is "
                         + std::to_string(rhs.slow()) + "x" + std::to_string(rhs.fast()));
    }
    std::span<double> const left = lhs.data();
    std::span<float const> const right = rhs.data();
    parallel_for(exec, add_array_label, RangePolicy(0, left.size()), [left, right](std::size_t j) {
        left[j] = left[j] + static_cast<double>(right[j]);
    });
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
