//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/campaign/plan.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>

namespace xtrace
{
//---------------------------------------------------------------------------//
/*!
 * How a batch of images is spread over ranks and simulated device slots.
 *
 * At most \c devices ranks run their compute phase at once; the remaining
 * ranks wait or perform I/O. Image \c i uses seed `seed + i`.
 */
struct CampaignPlan
{
    std::size_t n_images = 1;
    std::size_t ranks = 1;
    std::size_t devices = 1;
    std::size_t ranks_per_device = 1;
    bool io_enabled = false;
    double io_latency_ms = 0;  //!< Simulated write time when no output_dir
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> output_dir;
};

//! Throws InvalidArgument when a count is zero or the latency is negative.
void validate(CampaignPlan const& plan);

//---------------------------------------------------------------------------//
}  // namespace xtrace
