//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file campaign/pipeline.cpp
//---------------------------------------------------------------------------//
#include "xtrace/campaign/pipeline.hpp"

#include "xtrace/exec/patterns.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
CrystalModel build_crystal(SimulationConfig const& cfg, std::uint64_t image_seed)
{
    CrystalModel crystal;
    crystal.cell = cfg.cell;
    crystal.n_cells = cfg.n_cells;

    Mat3 u = misset_rotation(cfg.misset_deg);
    if (cfg.random_orientation)
    {
        u = u * random_rotation(image_seed);
    }
    crystal.orientation = Orientation(u);

    if (cfg.mosaic_rotations)
    {
        crystal.mosaic.rotations = *cfg.mosaic_rotations;
        crystal.mosaic.spread_deg = cfg.mosaic_spread_deg;
        crystal.mosaic.seed.reset();
    }
    else
    {
        crystal.mosaic
            = generate_mosaic_rotations(image_seed, cfg.mosaic_spread_deg, cfg.mosaic_domains);
    }
    return crystal;
}

SpotsContext spots_context_for(SimulationConfig const& cfg, std::uint64_t image_seed)
{
    SpotsContext ctx
        = make_spots_context(build_crystal(cfg, image_seed), cfg.panel, cfg.spectrum, cfg.oversample);
    ctx.sf_table = cfg.sf_table;
    return ctx;
}

AccumImage simulate_image(SimulationConfig const& cfg, std::uint64_t image_seed, Executor& exec)
{
    DetectorPanel const& panel = cfg.panel;
    AccumImage image(panel.slow_pixels, panel.fast_pixels, 0.0);
    StageImage stage(panel.slow_pixels, panel.fast_pixels);

    SpotsContext const spots = spots_context_for(cfg, image_seed);
    kernel_timer(exec, spots_label, [&] { nanobragg_spots(exec, spots, stage); });
    kernel_timer(exec, add_array_label, [&] { add_array(exec, image, stage); });

    if (cfg.background)
    {
        BackgroundContext const bg = make_background_context(
            *cfg.background, panel, cfg.spectrum, cfg.thickness_factor);
        kernel_timer(exec, background_label, [&] { add_background(exec, bg, stage); });
        kernel_timer(exec, add_array_label, [&] { add_array(exec, image, stage); });
    }
    return image;
}

ImageMetadata
image_metadata(SimulationConfig const& cfg, std::uint64_t seed, std::uint64_t image_index)
{
    ImageMetadata meta;
    meta.slow = cfg.panel.slow_pixels;
    meta.fast = cfg.panel.fast_pixels;
    meta.pixel_size = cfg.panel.pixel_size;
    meta.distance = cfg.panel.distance;
    meta.spectrum = cfg.spectrum.samples;
    meta.seed = seed;
    meta.image_index = image_index;
    meta.config = cfg.source.string();
    return meta;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
