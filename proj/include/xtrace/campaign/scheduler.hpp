//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/campaign/scheduler.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "plan.hpp"
#include "xtrace/error.hpp"
#include "xtrace/exec/executor.hpp"
#include "xtrace/io/config.hpp"
#include "xtrace/kernels/pixel_buffer.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
//! Contiguous block of image indices [begin, end) owned by one rank.
struct ImageBatch
{
    std::size_t rank = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const { return end - begin; }
    friend bool operator==(ImageBatch const&, ImageBatch const&) = default;
};

struct KernelStat
{
    double total_ms = 0;
    std::size_t count = 0;
    double mean_ms = 0;
};

struct ImageFault
{
    std::size_t image_index = 0;
    std::string message;
};

struct CampaignReport
{
    CampaignPlan plan;
    std::string executor;
    double total_wall_s = 0;
    double throughput = 0;  //!< images / s
    std::vector<std::size_t> per_rank_images;
    std::vector<double> per_rank_busy_s;  //!< Sum of per-image times
    std::map<std::string, KernelStat> kernels;
    std::vector<std::uint32_t> image_crc32;  //!< CRC of each float32 payload
    std::vector<ImageFault> faults;
};

//! An I/O failure stopped the campaign.
class CampaignAborted : public IoError
{
  public:
    CampaignAborted(std::size_t image_index, std::string const& what)
        : IoError("campaign aborted at image " + std::to_string(image_index) + ": " + what)
        , image_index_(image_index)
    {
    }

    std::size_t image_index() const noexcept { return image_index_; }

  private:
    std::size_t image_index_;
};

//! Receives each finished image; called concurrently from rank threads.
using ImageSink = std::function<void(std::size_t image_index, AccumImage const& image)>;

//---------------------------------------------------------------------------//
//! Static block distribution: sizes differ by at most one, larger first.
std::vector<ImageBatch> plan_batches(std::size_t n_images, std::size_t ranks);

/*!
 * Simulate every image of the plan.
 *
 * Each rank runs on its own thread with a private copy of \c exec. The
 * compute phase of an image holds one of `plan.devices` slots; writing (or
 * the simulated write latency) happens after the slot is released, so a
 * rank sharing a device hides its I/O behind the other ranks' compute.
 */
CampaignReport run_campaign(CampaignPlan const& plan,
                            SimulationConfig const& cfg,
                            Executor const& exec,
                            ImageSink const& sink = {});

//! Output stem for image `index` inside `dir` (img_000042).
std::filesystem::path image_stem(std::filesystem::path const& dir, std::size_t index);

//---------------------------------------------------------------------------//
}  // namespace xtrace
