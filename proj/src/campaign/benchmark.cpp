//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file campaign/benchmark.cpp
//---------------------------------------------------------------------------//
#include "xtrace/campaign/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "xtrace/kernels/kernels.hpp"

namespace xtrace
{
namespace
{
std::string fixed(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

//! Simple aligned table: first column left-aligned, the rest right-aligned.
std::string render(std::vector<std::string> const& header,
                   std::vector<std::vector<std::string>> const& rows,
                   TableFormat fmt)
{
    std::ostringstream out;
    if (fmt == TableFormat::markdown)
    {
        auto line = [&out](std::vector<std::string> const& cells) {
            out << '|';
            for (auto const& c : cells)
            {
                out << ' ' << c << " |";
            }
            out << '\n';
        };
        line(header);
        out << '|';
        for (std::size_t i = 0; i < header.size(); ++i)
        {
            out << (i == 0 ? " --- |" : " ---: |");
        }
        out << '\n';
        for (auto const& r : rows)
        {
            line(r);
        }
        return out.str();
    }

    std::vector<std::size_t> width(header.size(), 0);
    auto measure = [&width](std::vector<std::string> const& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            width[i] = std::max(width[i], cells[i].size());
        }
    };
    measure(header);
    for (auto const& r : rows)
    {
        measure(r);
    }
    auto line = [&](std::vector<std::string> const& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            std::string const pad(width[i] - cells[i].size(), ' ');
            out << (i ? "  " : "") << (i == 0 ? cells[i] + pad : pad + cells[i]);
        }
        out << '\n';
    };
    line(header);
    std::size_t total = 0;
    for (std::size_t w : width)
    {
        total += w;
    }
    out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
    for (auto const& r : rows)
    {
        line(r);
    }
    return out.str();
}

CampaignReport best_of(CampaignPlan const& plan,
                       SimulationConfig const& cfg,
                       std::size_t repeat)
{
    std::optional<CampaignReport> best;
    for (std::size_t i = 0; i < std::max<std::size_t>(1, repeat); ++i)
    {
        CampaignReport r = run_campaign(plan, cfg, Executor::serial());
        if (!best || r.total_wall_s < best->total_wall_s)
        {
            best = std::move(r);
        }
    }
    return std::move(*best);
}

CampaignPlan sweep_plan(std::size_t n_images, SweepOptions const& options)
{
    CampaignPlan plan;
    plan.n_images = n_images;
    plan.io_enabled = options.io_enabled;
    plan.io_latency_ms = options.io_latency_ms;
    plan.seed = options.seed;
    plan.output_dir = options.output_dir;
    return plan;
}

std::size_t parse_count(std::string const& s, std::size_t line)
{
    double const v = parse_number(s, "csv", line);
    if (v < 1 || v != std::floor(v))
    {
        throw ParseError("csv", line, "expected a positive integer, got '" + s + "'");
    }
    return static_cast<std::size_t>(v);
}

// Canonical kernel order first, then anything else alphabetically.
std::vector<std::string> kernel_columns(std::vector<ExecutorTimings> const& timings)
{
    std::vector<std::string> cols;
    std::set<std::string> seen;
    for (char const* k : {spots_label, background_label, add_array_label})
    {
        for (auto const& t : timings)
        {
            if (t.mean_ms.count(k) && seen.insert(k).second)
            {
                cols.emplace_back(k);
            }
        }
    }
    std::set<std::string> rest;
    for (auto const& t : timings)
    {
        for (auto const& [label, ms] : t.mean_ms)
        {
            if (!seen.count(label))
            {
                rest.insert(label);
            }
        }
    }
    cols.insert(cols.end(), rest.begin(), rest.end());
    return cols;
}
}  // namespace

//---------------------------------------------------------------------------//
ScalingResult strong_scaling(SimulationConfig const& cfg,
                             std::size_t n_images,
                             std::vector<std::size_t> const& worker_counts,
                             SweepOptions const& options)
{
    if (worker_counts.empty())
    {
        throw InvalidArgument("strong_scaling needs at least one worker count");
    }
    for (std::size_t i = 0; i < worker_counts.size(); ++i)
    {
        if (worker_counts[i] == 0 || (i > 0 && worker_counts[i] <= worker_counts[i - 1]))
        {
            throw InvalidArgument("worker counts must be positive and strictly ascending");
        }
    }

    ScalingResult result;
    for (std::size_t w : worker_counts)
    {
        CampaignPlan plan = sweep_plan(n_images, options);
        plan.ranks = w;
        plan.devices = w;
        plan.ranks_per_device = 1;
        result.reports.push_back(best_of(plan, cfg, options.repeat));
    }

    double const t0 = result.reports.front().total_wall_s;
    auto const w0 = static_cast<double>(worker_counts.front());
    for (std::size_t i = 0; i < worker_counts.size(); ++i)
    {
        ScalingRow row;
        row.workers = worker_counts[i];
        row.wall_s = result.reports[i].total_wall_s;
        row.speedup = i == 0 ? 1.0 : t0 / row.wall_s;
        row.efficiency = i == 0 ? 1.0 : row.speedup / (static_cast<double>(row.workers) / w0);
        result.rows.push_back(row);
    }
    return result;
}

CsvTable scaling_csv(std::vector<ScalingRow> const& rows)
{
    CsvTable t;
    t.header = {"workers", "wall_s", "speedup", "efficiency"};
    for (auto const& r : rows)
    {
        t.rows.push_back({std::to_string(r.workers),
                          format_number(r.wall_s),
                          format_number(r.speedup),
                          format_number(r.efficiency)});
    }
    return t;
}

std::vector<ScalingRow> scaling_from_csv(CsvTable const& table)
{
    std::size_t const cw = table.column("workers");
    std::size_t const ct = table.column("wall_s");
    std::size_t const cs = table.column("speedup");
    std::size_t const ce = table.column("efficiency");
    std::vector<ScalingRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
    {
        auto const& r = table.rows[i];
        rows.push_back({parse_count(r[cw], i + 2),
                        parse_number(r[ct], "csv", i + 2),
                        parse_number(r[cs], "csv", i + 2),
                        parse_number(r[ce], "csv", i + 2)});
    }
    return rows;
}

std::string render_scaling_table(std::vector<ScalingRow> const& rows, TableFormat fmt)
{
    std::vector<std::vector<std::string>> cells;
    for (auto const& r : rows)
    {
        cells.push_back({std::to_string(r.workers), fixed(r.wall_s, 3), fixed(r.speedup, 2),
                         fixed(r.efficiency, 2)});
    }
    return render({"workers", "wall_s", "speedup", "efficiency"}, cells, fmt);
}

//---------------------------------------------------------------------------//
TenancyResult tenancy_sweep(SimulationConfig const& cfg,
                            std::size_t n_images,
                            std::size_t devices,
                            std::vector<std::size_t> const& ranks_per_device,
                            SweepOptions const& options)
{
    if (ranks_per_device.empty() || devices == 0)
    {
        throw InvalidArgument("tenancy sweep needs devices >= 1 and a ranks-per-device list");
    }
    TenancyResult result;
    for (std::size_t k : ranks_per_device)
    {
        CampaignPlan plan = sweep_plan(n_images, options);
        plan.devices = devices;
        plan.ranks_per_device = k;
        plan.ranks = devices * k;
        CampaignReport report = best_of(plan, cfg, options.repeat);
        result.rows.push_back({k, plan.ranks, report.total_wall_s, report.throughput});
        result.reports.push_back(std::move(report));
    }
    return result;
}

CsvTable tenancy_csv(std::vector<TenancyRow> const& rows)
{
    CsvTable t;
    t.header = {"ranks_per_device", "ranks", "wall_s", "throughput"};
    for (auto const& r : rows)
    {
        t.rows.push_back({std::to_string(r.ranks_per_device), std::to_string(r.ranks),
                          format_number(r.wall_s), format_number(r.throughput)});
    }
    return t;
}

std::vector<TenancyRow> tenancy_from_csv(CsvTable const& table)
{
    std::size_t const ck = table.column("ranks_per_device");
    std::size_t const cr = table.column("ranks");
    std::size_t const ct = table.column("wall_s");
    std::size_t const cp = table.column("throughput");
    std::vector<TenancyRow> rows;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
    {
        auto const& r = table.rows[i];
        rows.push_back({parse_count(r[ck], i + 2), parse_count(r[cr], i + 2),
                        parse_number(r[ct], "csv", i + 2), parse_number(r[cp], "csv", i + 2)});
    }
    return rows;
}

std::string render_tenancy_table(std::vector<TenancyRow> const& rows, TableFormat fmt)
{
    std::vector<std::vector<std::string>> cells;
    for (auto const& r : rows)
    {
        cells.push_back({std::to_string(r.ranks_per_device), std::to_string(r.ranks),
                         fixed(r.wall_s, 3), fixed(r.throughput, 2)});
    }
    return render({"ranks_per_device", "ranks", "wall_s", "images_per_s"}, cells, fmt);
}

//---------------------------------------------------------------------------//
ExecutorTimings timings_from_report(CampaignReport const& report, std::string executor_label)
{
    ExecutorTimings t;
    t.executor = std::move(executor_label);
    for (auto const& [label, stat] : report.kernels)
    {
        t.mean_ms[label] = stat.mean_ms;
    }
    return t;
}

std::string format_speedup(double baseline_ms, double variant_ms)
{
    if (!(baseline_ms > 0))
    {
        throw ReportError("baseline kernel time must be > 0 to compute a speed-up");
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.1f %%", 100.0 * (baseline_ms - variant_ms) / baseline_ms);
    return buf;
}

std::string kernel_time_table(std::vector<ExecutorTimings> const& timings,
                              std::string const& baseline,
                              TableFormat fmt)
{
    auto const base = std::find_if(timings.begin(), timings.end(), [&](auto const& t) {
        return t.executor == baseline;
    });
    if (base == timings.end())
    {
        throw ReportError("baseline executor '" + baseline + "' not in timings");
    }
    std::vector<std::string> const kernels = kernel_columns(timings);
    if (kernels.empty())
    {
        throw ReportError("no kernel timings to tabulate");
    }

    std::vector<std::string> header{""};
    header.insert(header.end(), kernels.begin(), kernels.end());

    std::vector<std::vector<std::string>> rows;
    for (auto const& t : timings)
    {
        std::vector<std::string> row{t.executor};
        for (auto const& k : kernels)
        {
            auto const it = t.mean_ms.find(k);
            row.push_back(it == t.mean_ms.end() ? "-" : fixed(it->second, 2) + " ms");
        }
        rows.push_back(std::move(row));
    }
    std::size_t const variants = timings.size() - 1;
    for (auto const& t : timings)
    {
        if (t.executor == baseline)
        {
            continue;
        }
        std::vector<std::string> row{variants == 1 ? "Speed-up" : "Speed-up " + t.executor};
        for (auto const& k : kernels)
        {
            auto const b = base->mean_ms.find(k);
            auto const v = t.mean_ms.find(k);
            if (b == base->mean_ms.end())
            {
                throw ReportError("baseline '" + baseline + "' has no time for kernel '" + k + "'");
            }
            row.push_back(v == t.mean_ms.end() ? "-" : format_speedup(b->second, v->second));
        }
        rows.push_back(std::move(row));
    }
    return render(header, rows, fmt);
}

CsvTable kernel_timings_csv(std::vector<ExecutorTimings> const& timings)
{
    CsvTable t;
    t.header = {"executor", "kernel", "mean_ms"};
    for (auto const& e : timings)
    {
        for (auto const& [label, ms] : e.mean_ms)
        {
            t.rows.push_back({e.executor, label, format_number(ms)});
        }
    }
    return t;
}

std::vector<ExecutorTimings> kernel_timings_from_csv(CsvTable const& table)
{
    std::size_t const ce = table.column("executor");
    std::size_t const ck = table.column("kernel");
    std::size_t const cm = table.column("mean_ms");
    std::vector<ExecutorTimings> out;
    for (std::size_t i = 0; i < table.rows.size(); ++i)
    {
        auto const& r = table.rows[i];
        auto it = std::find_if(out.begin(), out.end(), [&](auto const& t) { return t.executor == r[ce]; });
        if (it == out.end())
        {
            out.push_back({r[ce], {}});
            it = out.end() - 1;
        }
        it->mean_ms[r[ck]] = parse_number(r[cm], "csv", i + 2);
    }
    return out;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
