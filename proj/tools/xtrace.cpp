//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/xtrace.cpp
//! Command-line front end: simulate, benchmark, report, inspect.
//!
//! Exit codes: 0 success, 1 usage/config/schema error, 2 I/O error,
//! 3 numerical fault, 4 checksum mismatch.
//---------------------------------------------------------------------------//
#include <charconv>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "xtrace/campaign/benchmark.hpp"
#include "xtrace/campaign/pipeline.hpp"
#include "xtrace/campaign/scheduler.hpp"
#include "xtrace/exec/executor.hpp"
#include "xtrace/io/config.hpp"
#include "xtrace/io/csv.hpp"
#include "xtrace/io/image_io.hpp"
#include "xtrace/kernels/image_ops.hpp"

namespace
{
using namespace xtrace;

enum ExitCode : int
{
    exit_ok = 0,
    exit_config = 1,
    exit_io = 2,
    exit_numerical = 3,
    exit_checksum = 4,
};

//---------------------------------------------------------------------------//
// Map library errors onto stable exit codes.
template<class F>
int guarded(F&& f)
{
    try
    {
        return f();
    }
    catch (ChecksumError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_checksum;
    }
    catch (NumericalFault const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_numerical;
    }
    catch (IoError const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_io;
    }
    catch (Error const& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return exit_config;
    }
}

std::vector<std::size_t> parse_count_list(std::string const& text, std::string const& flag)
{
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        auto const comma = text.find(',', pos);
        std::string const item
            = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || v == 0)
        {
            throw InvalidArgument(flag + ": expected comma-separated positive integers, got '"
                                  + text + "'");
        }
        out.push_back(v);
        if (comma == std::string::npos)
        {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

void print_kernel_means(CampaignReport const& report)
{
    for (auto const& [label, stat] : report.kernels)
    {
        std::printf("  %-16s mean %9.3f ms over %zu calls\n", label.c_str(), stat.mean_ms, stat.count);
    }
}

//---------------------------------------------------------------------------//
struct SimulateArgs
{
    std::string config;
    std::string out;
    std::optional<std::size_t> images;
    std::string executor;
    std::optional<std::size_t> workers;
    std::optional<std::uint64_t> seed;
    bool no_io = false;
    bool preview = false;
};

Executor make_executor(std::string const& kind, std::optional<std::size_t> workers)
{
    if (kind == "serial")
    {
        return Executor::serial();
    }
    return Executor::workers(workers ? *workers : default_worker_count());
}

int cmd_simulate(SimulateArgs const& args)
{
    if (args.out.empty() && !args.no_io)
    {
        throw InvalidArgument("simulate: --out DIR is required unless --no-io is given");
    }
    if (args.executor == "serial" && args.workers)
    {
        throw InvalidArgument("simulate: --workers conflicts with --executor serial");
    }
    SimulationConfig const cfg = load_config(args.config);
    CampaignPlan plan = cfg.campaign;
    if (args.images)
    {
        plan.n_images = *args.images;
    }
    if (args.seed)
    {
        plan.seed = *args.seed;
    }
    plan.io_enabled = !args.no_io;
    if (!args.no_io)
    {
        plan.output_dir = args.out;
    }

    Executor const exec = make_executor(args.executor.empty() ? "workers" : args.executor, args.workers);

    ImageSink sink;
    if (args.preview && plan.output_dir)
    {
        std::filesystem::path const dir = *plan.output_dir;
        sink = [dir](std::size_t index, AccumImage const& image) {
            std::filesystem::path p = image_stem(dir, index);
            p += ".pgm";
            write_preview(image, p);
        };
    }

    CampaignReport const report = run_campaign(plan, cfg, exec, sink);
    std::printf("simulated %zu images with %s (%zu ranks, %zu devices)%s\n",
                plan.n_images, report.executor.c_str(), plan.ranks, plan.devices,
                args.no_io ? ", no output written" : "");
    std::printf("wall %.3f s, throughput %.2f images/s\n", report.total_wall_s, report.throughput);
    print_kernel_means(report);
    if (!report.faults.empty())
    {
        for (auto const& f : report.faults)
        {
            std::cerr << "error: image " << f.image_index << ": " << f.message << '\n';
        }
        return exit_numerical;
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
struct BenchmarkArgs
{
    std::string config;
    std::optional<std::size_t> images;
    std::string workers_list;
    std::optional<std::size_t> ranks;
    std::optional<std::size_t> devices;
    std::string ranks_per_device;
    double io_latency_ms = 0;
    std::string io_dir;
    std::string csv;
    std::string tenancy_csv;
    std::string kernel_csv;
    std::size_t repeat = 1;
    std::optional<std::uint64_t> seed;
};

int cmd_benchmark(BenchmarkArgs const& args)
{
    SimulationConfig const cfg = load_config(args.config);
    std::size_t const n_images = args.images ? *args.images : cfg.campaign.n_images;

    SweepOptions options;
    options.repeat = args.repeat;
    options.io_latency_ms = args.io_latency_ms;
    options.seed = args.seed ? *args.seed : cfg.campaign.seed;
    if (!args.io_dir.empty())
    {
        options.output_dir = args.io_dir;
    }
    options.io_enabled = args.io_latency_ms > 0 || options.output_dir.has_value();

    bool const scaling_mode = !args.workers_list.empty();
    bool const tenancy_mode = !scaling_mode || !args.ranks_per_device.empty() || args.devices
                              || args.ranks;
    std::vector<ExecutorTimings> timings;

    if (scaling_mode)
    {
        auto const counts = parse_count_list(args.workers_list, "--workers-list");
        ScalingResult const result = strong_scaling(cfg, n_images, counts, options);
        std::printf("strong scaling, %zu images, best of %zu\n", n_images, args.repeat);
        std::cout << render_scaling_table(result.rows, TableFormat::text);
        if (!args.csv.empty())
        {
            write_csv(scaling_csv(result.rows), args.csv);
        }
        for (std::size_t i = 0; i < counts.size(); ++i)
        {
            timings.push_back(
                timings_from_report(result.reports[i], "workers=" + std::to_string(counts[i])));
        }
    }
    if (tenancy_mode)
    {
        std::size_t const devices = args.devices ? *args.devices : cfg.campaign.devices;
        std::vector<std::size_t> per_device
            = args.ranks_per_device.empty()
                  ? std::vector<std::size_t>{cfg.campaign.ranks_per_device}
                  : parse_count_list(args.ranks_per_device, "--ranks-per-device");
        TenancyResult result;
        if (args.ranks)
        {
            if (per_device.size() != 1)
            {
                throw InvalidArgument("--ranks requires a single --ranks-per-device value");
            }
            CampaignPlan plan;
            plan.n_images = n_images;
            plan.ranks = *args.ranks;
            plan.devices = devices;
            plan.ranks_per_device = per_device.front();
            plan.io_enabled = options.io_enabled;
            plan.io_latency_ms = options.io_latency_ms;
            plan.output_dir = options.output_dir;
            plan.seed = options.seed;
            std::optional<CampaignReport> best;
            for (std::size_t i = 0; i < std::max<std::size_t>(1, args.repeat); ++i)
            {
                CampaignReport r = run_campaign(plan, cfg, Executor::serial());
                if (!best || r.total_wall_s < best->total_wall_s)
                {
                    best = std::move(r);
                }
            }
            result.rows.push_back({plan.ranks_per_device, plan.ranks, best->total_wall_s, best->throughput});
            result.reports.push_back(std::move(*best));
        }
        else
        {
            result = tenancy_sweep(cfg, n_images, devices, per_device, options);
        }
        std::printf("device sharing, %zu images, %zu device(s), io latency %.1f ms, best of %zu\n",
                    n_images, devices, args.io_latency_ms, args.repeat);
        std::cout << render_tenancy_table(result.rows, TableFormat::text);
        if (!args.tenancy_csv.empty())
        {
            write_csv(tenancy_csv(result.rows), args.tenancy_csv);
        }
        for (std::size_t i = 0; i < result.rows.size(); ++i)
        {
            timings.push_back(timings_from_report(
                result.reports[i], "ranks_per_device=" + std::to_string(result.rows[i].ranks_per_device)));
        }
    }

    if (!timings.empty())
    {
        std::cout << '\n' << kernel_time_table(timings, timings.front().executor);
        if (!args.kernel_csv.empty())
        {
            write_csv(kernel_timings_csv(timings), args.kernel_csv);
        }
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
int cmd_report(std::string const& csv_path, std::string const& format, std::string const& baseline)
{
    TableFormat const fmt = format == "md" ? TableFormat::markdown : TableFormat::text;
    CsvTable const table = read_csv(csv_path);
    auto has = [&table](char const* name) {
        return std::find(table.header.begin(), table.header.end(), name) != table.header.end();
    };
    if (table.rows.empty())
    {
        throw ParseError(csv_path, 1, "CSV has a header but no data rows");
    }
    if (has("executor") || has("kernel"))
    {
        auto const timings = kernel_timings_from_csv(table);
        std::cout << kernel_time_table(timings, baseline.empty() ? timings.front().executor : baseline, fmt);
    }
    else if (has("ranks_per_device"))
    {
        std::cout << render_tenancy_table(tenancy_from_csv(table), fmt);
    }
    else
    {
        std::cout << render_scaling_table(scaling_from_csv(table), fmt);
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
int cmd_inspect(std::string const& path, std::size_t bins)
{
    LoadedImage const img = read_image(path);
    Executor const exec = Executor::workers(default_worker_count());
    ImageStats const stats = image_stats(exec, img.pixels);
    double lo = stats.min;
    double hi = stats.max;
    if (!(lo < hi))
    {
        lo -= 0.5;
        hi += 0.5;
    }
    Histogram const hist = image_histogram(exec, img.pixels, bins, lo, hi);

    std::printf("image %s: %zu x %zu, image index %llu, seed %llu, crc32 0x%08x ok\n",
                path.c_str(), img.meta.slow, img.meta.fast,
                static_cast<unsigned long long>(img.meta.image_index),
                static_cast<unsigned long long>(img.meta.seed), static_cast<unsigned>(img.meta.crc32));
    std::printf("min %.9g\nmax %.9g\nmean %.9g\ntotal %.9g\n", stats.min, stats.max, stats.mean, stats.total);
    std::printf("histogram (%zu bins over [%.6g, %.6g]):\n", bins, lo, hi);
    double const width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t b = 0; b < bins; ++b)
    {
        std::printf("  [%12.6g, %12.6g%c %10llu  cumulative %10llu\n",
                    lo + static_cast<double>(b) * width,
                    lo + static_cast<double>(b + 1) * width,
                    b + 1 == bins ? ']' : ')',
                    static_cast<unsigned long long>(hist.counts[b]),
                    static_cast<unsigned long long>(hist.cumulative[b]));
    }
    return exit_ok;
}
}  // namespace

//---------------------------------------------------------------------------//
int main(int argc, char** argv)
{
    CLI::App app{"xtrace: per-pixel X-ray diffraction image simulator and benchmark harness"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a batch of diffraction images");
    simulate->add_option("--config", sim.config, "Simulation config file")->required()->check(CLI::ExistingFile);
    auto* out_opt = simulate->add_option("--out", sim.out, "Output directory for .bin/.json images");
    simulate->add_option("--images", sim.images, "Number of images (overrides campaign.images)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--executor", sim.executor, "serial or workers")
        ->check(CLI::IsMember({"serial", "workers"}));
    simulate->add_option("--workers", sim.workers, "Worker threads per rank (default XTRACE_WORKERS)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Campaign seed (image i uses seed + i)");
    auto* no_io = simulate->add_flag("--no-io", sim.no_io, "Skip writing images");
    simulate->add_flag("--preview", sim.preview, "Also write an 8-bit PGM preview per image");
    no_io->excludes(out_opt);

    BenchmarkArgs bench;
    auto* benchmark = app.add_subcommand("benchmark", "Strong-scaling and device-sharing sweeps");
    benchmark->add_option("--config", bench.config, "Simulation config file")->required()->check(CLI::ExistingFile);
    benchmark->add_option("--images", bench.images, "Images per run")->check(CLI::PositiveNumber);
    benchmark->add_option("--workers-list", bench.workers_list, "Strong scaling worker counts, e.g. 1,2,4");
    benchmark->add_option("--ranks", bench.ranks, "Explicit rank count")->check(CLI::PositiveNumber);
    benchmark->add_option("--devices", bench.devices, "Simulated device slots")->check(CLI::PositiveNumber);
    benchmark->add_option("--ranks-per-device", bench.ranks_per_device, "Ranks sharing each device, e.g. 1,2,4");
    benchmark->add_option("--io-latency-ms", bench.io_latency_ms, "Simulated write time per image")
        ->check(CLI::NonNegativeNumber);
    benchmark->add_option("--io-dir", bench.io_dir, "Write images here instead of simulating latency");
    benchmark->add_option("--csv", bench.csv, "Scaling CSV: workers,wall_s,speedup,efficiency");
    benchmark->add_option("--tenancy-csv", bench.tenancy_csv, "Device-sharing CSV output");
    benchmark->add_option("--kernel-csv", bench.kernel_csv, "Per-kernel mean time CSV output");
    benchmark->add_option("--repeat", bench.repeat, "Runs per setting; the best is reported")
        ->check(CLI::PositiveNumber);
    benchmark->add_option("--seed", bench.seed, "Campaign seed");

    std::string report_csv;
    std::string report_format = "table";
    std::string report_baseline;
    auto* report = app.add_subcommand("report", "Render a benchmark CSV as a table");
    report->add_option("--csv", report_csv, "Scaling, device-sharing or kernel-time CSV")->required();
    report->add_option("--format", report_format, "table or md")->check(CLI::IsMember({"table", "md"}));
    report->add_option("--baseline", report_baseline, "Baseline executor for kernel tables");

    std::string inspect_path;
    std::size_t inspect_bins = 16;
    auto* inspect = app.add_subcommand("inspect", "Statistics and histogram of an image");
    inspect->add_option("image", inspect_path, "Image .bin file (sidecar .json alongside)")->required();
    inspect->add_option("--bins", inspect_bins, "Histogram bins")->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    if (simulate->parsed())
    {
        return guarded([&] { return cmd_simulate(sim); });
    }
    if (benchmark->parsed())
    {
        return guarded([&] { return cmd_benchmark(bench); });
    }
    if (report->parsed())
    {
        return guarded([&] { return cmd_report(report_csv, report_format, report_baseline); });
    }
    return guarded([&] { return cmd_inspect(inspect_path, inspect_bins); });
}
