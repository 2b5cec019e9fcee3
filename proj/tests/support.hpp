//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/support.hpp
//! Shared scenes for unit and acceptance tests.
//---------------------------------------------------------------------------//
#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <memory>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "reference/scalar_reference.hpp"
#include "xtrace/io/config.hpp"

namespace xtrace::test
{
//! Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(std::string const& name)
{
    auto const dir = std::filesystem::temp_directory_path()
                     / ("xtrace_test_" + name + "_" + std::to_string(std::random_device{}()));
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(std::filesystem::path const& path, std::string const& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
}

inline ref::M3 ref_matmul(ref::M3 const& a, ref::M3 const& b)
{
    ref::M3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    return r;
}

inline Mat3 to_mat(ref::M3 const& m)
{
    return {{Vec3{m[0][0], m[0][1], m[0][2]},
             Vec3{m[1][0], m[1][1], m[1][2]},
             Vec3{m[2][0], m[2][1], m[2][2]}}};
}

/*!
 * Small triclinic crystal on a 4x4 panel wide enough to cross several
 * reflections: N=(5,5,5), two explicit mosaic domains, two wavelengths,
 * oversample 2, polarization on, two-point background.
 *
 * Returns the same scene as a library config and as an oracle scene.
 */
inline std::pair<SimulationConfig, ref::Scene> oracle_scene(bool with_background = true)
{
    double const deg = std::numbers::pi / 180;
    double const tz = 12.5 * deg;
    ref::M3 const u{ref::V3{std::cos(tz), -std::sin(tz), 0},
                    ref::V3{std::sin(tz), std::cos(tz), 0},
                    ref::V3{0, 0, 1}};
    double const tx = 0.4 * deg;
    ref::M3 const m0{ref::V3{1, 0, 0}, ref::V3{0, 1, 0}, ref::V3{0, 0, 1}};
    ref::M3 const m1{ref::V3{1, 0, 0},
                     ref::V3{0, std::cos(tx), -std::sin(tx)},
                     ref::V3{0, std::sin(tx), std::cos(tx)}};

    ref::Scene s;
    s.a = 30, s.b = 35, s.c = 40, s.alpha = 85, s.beta = 95, s.gamma = 100;
    s.na = s.nb = s.nc = 5;
    s.domains = {ref_matmul(m0, u), ref_matmul(m1, u)};
    s.hkl = {{1, 0, 0, 120.0}, {0, 1, 0, 80.0}, {-1, 1, 0, 45.5}, {1, -1, 1, 33.0}};
    s.default_f = 7.5;
    s.slow = 4, s.fast = 4;
    s.pixel = 2.5e-3;
    s.distance = 0.05;
    s.center_slow = 1.3, s.center_fast = 0.7;
    s.wavelengths = {1.0, 1.02};
    s.weights = {0.7, 0.3};
    s.fluence = 1e24;
    s.polarization = true;
    s.oversample = 2;
    if (with_background)
    {
        s.bg_stol = {0.0, 0.5};
        s.bg_f = {2.57, 1.0};
        s.thickness = 0.5;
    }

    SimulationConfig cfg;
    cfg.cell = {s.a, s.b, s.c, s.alpha, s.beta, s.gamma};
    cfg.n_cells = {s.na, s.nb, s.nc};
    cfg.misset_deg = {0, 0, 12.5};
    cfg.mosaic_rotations = std::vector<Mat3>{to_mat(m0), to_mat(m1)};
    cfg.mosaic_domains = 2;
    auto table = std::make_shared<StructureFactorTable>();
    for (auto const& r : s.hkl)
        table->entries[{r.h, r.k, r.l}] = r.f;
    table->default_f = s.default_f;
    cfg.sf_table = table;
    cfg.panel.slow_pixels = 4;
    cfg.panel.fast_pixels = 4;
    cfg.panel.pixel_size = s.pixel;
    cfg.panel.distance = s.distance;
    cfg.panel.beam_center = {s.center_slow, s.center_fast};
    cfg.spectrum.samples = {{1.0, 0.7}, {1.02, 0.3}};
    cfg.spectrum.fluence = s.fluence;
    cfg.spectrum.polarization_on = true;
    cfg.oversample = 2;
    if (with_background)
    {
        cfg.background = BackgroundProfile{{{0.0, 2.57}, {0.5, 1.0}}};
        cfg.thickness_factor = 0.5;
    }
    return {cfg, s};
}

/*!
 * Desk-scale campaign workload: a 100 A cubic crystal, random orientation
 * per image, three mosaic domains, background, square panel of `pixels`.
 */
inline SimulationConfig desk_config(std::size_t pixels, int oversample = 1)
{
    SimulationConfig cfg;
    cfg.cell = {78.0, 78.0, 37.0, 90, 90, 90};
    cfg.n_cells = {10, 10, 10};
    cfg.random_orientation = true;
    cfg.mosaic_domains = 3;
    cfg.mosaic_spread_deg = 0.05;
    auto table = std::make_shared<StructureFactorTable>();
    table->default_f = 100;
    cfg.sf_table = table;
    cfg.panel.slow_pixels = pixels;
    cfg.panel.fast_pixels = pixels;
    cfg.panel.pixel_size = 172e-6 * (1024.0 / static_cast<double>(pixels));
    cfg.panel.distance = 0.12;
    cfg.panel.beam_center = {pixels / 2.0, pixels / 2.0};
    cfg.spectrum.samples = {{1.3, 1.0}};
    cfg.spectrum.fluence = 1e24;
    cfg.spectrum.polarization_on = true;
    cfg.background = BackgroundProfile{{{0.0, 2.57}, {0.365, 2.58}, {0.47, 2.8}, {0.5, 2.5}, {0.56, 2.0}}};
    cfg.thickness_factor = 0.1;
    cfg.oversample = oversample;
    return cfg;
}

}  // namespace xtrace::test
