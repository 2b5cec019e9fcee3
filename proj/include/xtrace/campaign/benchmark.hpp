//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/campaign/benchmark.hpp
//! Strong-scaling and device-sharing sweeps, and their report tables.
//---------------------------------------------------------------------------//
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "scheduler.hpp"
#include "xtrace/io/csv.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
//! Problem with report inputs (missing baseline, zero-time baseline, ...).
class ReportError : public Error
{
  public:
    using Error::Error;
};

enum class TableFormat
{
    text,
    markdown,
};

struct SweepOptions
{
    bool io_enabled = false;
    double io_latency_ms = 0;
    std::size_t repeat = 1;  //!< Best of this many runs is kept
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> output_dir;
};

//---------------------------------------------------------------------------//
struct ScalingRow
{
    std::size_t workers = 0;
    double wall_s = 0;
    double speedup = 0;
    double efficiency = 0;
};

struct ScalingResult
{
    std::vector<ScalingRow> rows;
    std::vector<CampaignReport> reports;  //!< Best run per worker count
};

/*!
 * Same workload at each worker count; each worker is a rank with its own
 * device slot and a serial executor.
 *
 * speedup = t(w0) / t(w), efficiency = speedup / (w / w0).
 */
ScalingResult strong_scaling(SimulationConfig const& cfg,
                             std::size_t n_images,
                             std::vector<std::size_t> const& worker_counts,
                             SweepOptions const& options = {});

CsvTable scaling_csv(std::vector<ScalingRow> const& rows);
std::vector<ScalingRow> scaling_from_csv(CsvTable const& table);
std::string render_scaling_table(std::vector<ScalingRow> const& rows, TableFormat fmt);

//---------------------------------------------------------------------------//
struct TenancyRow
{
    std::size_t ranks_per_device = 0;
    std::size_t ranks = 0;
    double wall_s = 0;
    double throughput = 0;
};

struct TenancyResult
{
    std::vector<TenancyRow> rows;
    std::vector<CampaignReport> reports;
};

//! Ranks = devices * k for each k; throughput is best-of-repeat.
TenancyResult tenancy_sweep(SimulationConfig const& cfg,
                            std::size_t n_images,
                            std::size_t devices,
                            std::vector<std::size_t> const& ranks_per_device,
                            SweepOptions const& options = {});

CsvTable tenancy_csv(std::vector<TenancyRow> const& rows);
std::vector<TenancyRow> tenancy_from_csv(CsvTable const& table);
std::string render_tenancy_table(std::vector<TenancyRow> const& rows, TableFormat fmt);

//---------------------------------------------------------------------------//
//! Mean kernel time per label for one executor configuration.
struct ExecutorTimings
{
    std::string executor;
    std::map<std::string, double> mean_ms;
};

ExecutorTimings timings_from_report(CampaignReport const& report, std::string executor_label);

//! "+15.7 %": relative reduction of the variant time versus the baseline.
std::string format_speedup(double baseline_ms, double variant_ms);

/*!
 * Kernel run-time table: one column per kernel, one row per executor, and
 * a speed-up row for every executor other than the baseline.
 */
std::string kernel_time_table(std::vector<ExecutorTimings> const& timings,
                              std::string const& baseline,
                              TableFormat fmt = TableFormat::text);

CsvTable kernel_timings_csv(std::vector<ExecutorTimings> const& timings);
std::vector<ExecutorTimings> kernel_timings_from_csv(CsvTable const& table);

//---------------------------------------------------------------------------//
}  // namespace xtrace
