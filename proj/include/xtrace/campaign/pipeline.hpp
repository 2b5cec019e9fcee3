//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/campaign/pipeline.hpp
//! One image: spots -> accumulate -> background -> accumulate.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>

#include "xtrace/core/model.hpp"
#include "xtrace/exec/executor.hpp"
#include "xtrace/io/config.hpp"
#include "xtrace/io/image_io.hpp"
#include "xtrace/kernels/kernels.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
/*!
 * Crystal for the image with the given seed (campaign seed + image index).
 *
 * Orientation is the misset rotation, preceded by a uniform random rotation
 * drawn from the seed when random_orientation is set. Mosaic rotations are
 * the explicit list, or generated from the same seed. The returned model's
 * structure-factor table is left empty; the config's shared table is used
 * by the kernels.
 */
CrystalModel build_crystal(SimulationConfig const& cfg, std::uint64_t image_seed);

SpotsContext spots_context_for(SimulationConfig const& cfg, std::uint64_t image_seed);

/*!
 * Full kernel pipeline for one image into a 64-bit accumulator.
 *
 * Each kernel call is timed into the executor's log under its kernel label.
 * Throws NumericalFault when a kernel produces a non-finite pixel.
 */
AccumImage simulate_image(SimulationConfig const& cfg, std::uint64_t image_seed, Executor& exec);

//! Sidecar metadata for image `image_index` of a campaign with `seed`.
ImageMetadata
image_metadata(SimulationConfig const& cfg, std::uint64_t seed, std::uint64_t image_index);

//---------------------------------------------------------------------------//
}  // namespace xtrace
