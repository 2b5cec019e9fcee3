//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file campaign/scheduler.cpp
//---------------------------------------------------------------------------//
#include "xtrace/campaign/scheduler.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <semaphore>
#include <thread>

#include "xtrace/campaign/pipeline.hpp"
#include "xtrace/io/image_io.hpp"

namespace xtrace
{
namespace
{
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Per-rank results, merged after the join.
struct RankOutcome
{
    std::size_t images = 0;
    double busy_s = 0;
    std::vector<TimingRecord> timings;
    std::vector<ImageFault> faults;
    std::exception_ptr error;
};

// Releases a device slot on scope exit.
class SlotGuard
{
  public:
    explicit SlotGuard(std::counting_semaphore<>& gate) : gate_(gate) { gate_.acquire(); }
    ~SlotGuard() { gate_.release(); }
    SlotGuard(SlotGuard const&) = delete;
    SlotGuard& operator=(SlotGuard const&) = delete;

  private:
    std::counting_semaphore<>& gate_;
};
}  // namespace

//---------------------------------------------------------------------------//
void validate(CampaignPlan const& plan)
{
    if (plan.n_images == 0 || plan.ranks == 0 || plan.devices == 0 || plan.ranks_per_device == 0)
    {
        throw InvalidArgument("campaign images, ranks, devices and ranks per device must be >= 1");
    }
    if (!(plan.io_latency_ms >= 0) || !std::isfinite(plan.io_latency_ms))
    {
        throw InvalidArgument("io latency must be finite and >= 0");
    }
}

std::vector<ImageBatch> plan_batches(std::size_t n_images, std::size_t ranks)
{
    if (ranks == 0)
    {
        throw InvalidArgument("plan_batches needs at least one rank");
    }
    std::vector<ImageBatch> batches;
    batches.reserve(ranks);
    std::size_t const base = n_images / ranks;
    std::size_t const extra = n_images % ranks;
    std::size_t next = 0;
    for (std::size_t r = 0; r < ranks; ++r)
    {
        std::size_t const count = base + (r < extra ? 1 : 0);
        batches.push_back({r, next, next + count});
        next += count;
    }
    return batches;
}

std::filesystem::path image_stem(std::filesystem::path const& dir, std::size_t index)
{
    char name[32];
    std::snprintf(name, sizeof(name), "img_%06zu", index);
    return dir / name;
}

//---------------------------------------------------------------------------//
CampaignReport run_campaign(CampaignPlan const& plan,
                            SimulationConfig const& cfg,
                            Executor const& exec,
                            ImageSink const& sink)
{
    validate(plan);
    if (plan.io_enabled && plan.output_dir)
    {
        std::error_code ec;
        std::filesystem::create_directories(*plan.output_dir, ec);
        if (ec)
        {
            throw IoError("cannot create output directory '" + plan.output_dir->string()
                          + "': " + ec.message());
        }
    }

    std::vector<ImageBatch> const batches = plan_batches(plan.n_images, plan.ranks);
    std::vector<RankOutcome> outcomes(plan.ranks);
    std::vector<std::uint32_t> crcs(plan.n_images, 0);
    std::counting_semaphore<> gate(static_cast<std::ptrdiff_t>(plan.devices));
    std::atomic<bool> abort{false};
    std::mutex abort_mutex;
    std::optional<CampaignAborted> abort_reason;

    auto rank_main = [&](ImageBatch const batch) {
        RankOutcome& out = outcomes[batch.rank];
        Executor local = exec;
        local.clear_timing_log();
        try
        {
            for (std::size_t index = batch.begin; index < batch.end; ++index)
            {
                if (abort.load())
                {
                    break;
                }
                auto const start = Clock::now();
                ++out.images;
                std::optional<AccumImage> image;
                {
                    SlotGuard slot(gate);
                    try
                    {
                        image = simulate_image(cfg, plan.seed + index, local);
                    }
                    catch (NumericalFault const& e)
                    {
                        out.faults.push_back({index, e.what()});
                    }
                }
                if (!image)
                {
                    out.busy_s += seconds_since(start);
                    continue;
                }
                crcs[index] = crc32(encode_f32le(*image));

                if (plan.io_enabled)
                {
                    if (plan.output_dir)
                    {
                        try
                        {
                            write_image(*image,
                                        image_stem(*plan.output_dir, index),
                                        image_metadata(cfg, plan.seed, index));
                        }
                        catch (Error const& e)
                        {
                            std::lock_guard lock(abort_mutex);
                            if (!abort_reason || index < abort_reason->image_index())
                            {
                                abort_reason.emplace(index, e.what());
                            }
                            abort.store(true);
                            break;
                        }
                    }
                    else if (plan.io_latency_ms > 0)
                    {
                        std::this_thread::sleep_for(
                            std::chrono::duration<double, std::milli>(plan.io_latency_ms));
                    }
                }
                if (sink)
                {
                    sink(index, *image);
                }
                out.busy_s += seconds_since(start);
            }
        }
        catch (...)
        {
            out.error = std::current_exception();
            abort.store(true);
        }
        out.timings = local.timing_log();
    };

    auto const start = Clock::now();
    {
        std::vector<std::jthread> ranks;
        ranks.reserve(plan.ranks);
        for (ImageBatch const& batch : batches)
        {
            ranks.emplace_back(rank_main, batch);
        }
    }
    double const wall = seconds_since(start);

    if (abort_reason)
    {
        throw *abort_reason;
    }
    for (RankOutcome const& o : outcomes)
    {
        if (o.error)
        {
            std::rethrow_exception(o.error);
        }
    }

    CampaignReport report;
    report.plan = plan;
    report.executor = exec.name();
    report.total_wall_s = wall;
    report.throughput = wall > 0 ? static_cast<double>(plan.n_images) / wall : 0;
    report.image_crc32 = std::move(crcs);
    for (RankOutcome const& o : outcomes)
    {
        report.per_rank_images.push_back(o.images);
        report.per_rank_busy_s.push_back(o.busy_s);
        for (TimingRecord const& t : o.timings)
        {
            KernelStat& stat = report.kernels[t.label];
            stat.total_ms += t.ms;
            ++stat.count;
        }
        report.faults.insert(report.faults.end(), o.faults.begin(), o.faults.end());
    }
    for (auto& [label, stat] : report.kernels)
    {
        stat.mean_ms = stat.total_ms / static_cast<double>(stat.count);
    }
    std::sort(report.faults.begin(), report.faults.end(), [](auto const& a, auto const& b) {
        return a.image_index < b.image_index;
    });
    return report;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
