//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_scheduler.cpp
//---------------------------------------------------------------------------//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mutex>
#include <random>

#include "support.hpp"
#include "xtrace/campaign/benchmark.hpp"
#include "xtrace/campaign/pipeline.hpp"
#include "xtrace/campaign/scheduler.hpp"
#include "xtrace/io/image_io.hpp"

using namespace xtrace;
namespace fs = std::filesystem;

namespace
{
std::vector<std::size_t> sizes(std::vector<ImageBatch> const& batches)
{
    std::vector<std::size_t> out;
    for (auto const& b : batches)
        out.push_back(b.size());
    return out;
}

struct Collector
{
    std::mutex lock;
    std::map<std::size_t, AccumImage> images;

    ImageSink sink()
    {
        return [this](std::size_t i, AccumImage const& img) {
            std::lock_guard<std::mutex> g(lock);
            images.emplace(i, img);
        };
    }
};
}  // namespace

TEST_CASE("plan_batches")
{
    CHECK(sizes(plan_batches(10, 4)) == std::vector<std::size_t>{3, 3, 2, 2});
    auto const single = plan_batches(5, 1);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == ImageBatch{0, 0, 5});

    auto const big = plan_batches(100000, 128);
    REQUIRE(big.size() == 128);
    std::size_t n782 = 0, n781 = 0, total = 0;
    for (auto const& b : big)
    {
        n782 += b.size() == 782;
        n781 += b.size() == 781;
        total += b.size();
    }
    CHECK(n782 == 32);
    CHECK(n781 == 96);
    CHECK(total == 100000);

    SUBCASE("random plans partition the images")
    {
        std::mt19937_64 rng(6);
        std::uniform_int_distribution<std::size_t> n_dist(1, 5000), r_dist(1, 300);
        for (int t = 0; t < 500; ++t)
        {
            std::size_t const n = n_dist(rng), ranks = r_dist(rng);
            auto const plan = plan_batches(n, ranks);
            REQUIRE(plan.size() == ranks);
            std::size_t next = 0, lo = n, hi = 0;
            for (std::size_t r = 0; r < ranks; ++r)
            {
                REQUIRE(plan[r].rank == r);
                REQUIRE(plan[r].begin == next);
                next = plan[r].end;
                lo = std::min(lo, plan[r].size());
                hi = std::max(hi, plan[r].size());
            }
            REQUIRE(next == n);
            REQUIRE(hi - lo <= 1);
            REQUIRE(plan_batches(n, ranks) == plan);
        }
    }
    CHECK_THROWS_AS(plan_batches(4, 0), InvalidArgument);
}

TEST_CASE("campaign is transparent to ranks and executors")
{
    SimulationConfig const cfg = test::desk_config(32);
    CampaignPlan plan;
    plan.n_images = 4;
    plan.seed = 500;

    Collector one;
    CampaignReport const r1 = run_campaign(plan, cfg, Executor::serial(), one.sink());
    REQUIRE(one.images.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
    {
        Executor exec = Executor::serial();
        CHECK(one.images.at(i) == simulate_image(cfg, 500 + i, exec));
    }

    plan.ranks = 4;
    plan.devices = 2;
    plan.ranks_per_device = 2;
    Collector four;
    CampaignReport const r4 = run_campaign(plan, cfg, Executor::workers(2), four.sink());
    CHECK(four.images == one.images);
    CHECK(r4.image_crc32 == r1.image_crc32);
    CHECK(r4.per_rank_images == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("campaign report arithmetic")
{
    SimulationConfig const cfg = test::desk_config(32);
    CampaignPlan plan;
    plan.n_images = 7;
    plan.ranks = 3;
    plan.devices = 3;
    CampaignReport const r = run_campaign(plan, cfg, Executor::serial());
    std::size_t total = 0;
    for (auto n : r.per_rank_images)
        total += n;
    CHECK(total == 7);
    CHECK(r.per_rank_images == std::vector<std::size_t>{3, 2, 2});
    CHECK(std::fabs(r.throughput * r.total_wall_s - 7) <= 0.001 * 7);
    REQUIRE(r.kernels.count(spots_label) == 1);
    CHECK(r.kernels.at(spots_label).count == 7);
    CHECK(r.kernels.at(background_label).count == 7);
    CHECK(r.kernels.at(add_array_label).count == 14);
    CHECK(r.kernels.at(spots_label).mean_ms
          == doctest::Approx(r.kernels.at(spots_label).total_ms / 7));
    CHECK(r.image_crc32.size() == 7);
    CHECK(r.faults.empty());
    CHECK(r.executor == "serial");

    double slowest = 0;
    for (double b : r.per_rank_busy_s)
        slowest = std::max(slowest, b);
    CHECK(r.total_wall_s <= 1.1 * slowest + 0.01);
}

TEST_CASE("campaign writes every image")
{
    fs::path const dir = test::scratch_dir("camp");
    SimulationConfig const cfg = test::desk_config(16);
    CampaignPlan plan;
    plan.n_images = 5;
    plan.ranks = 2;
    plan.io_enabled = true;
    plan.output_dir = dir / "out";
    plan.seed = 3;
    CampaignReport const r = run_campaign(plan, cfg, Executor::serial());
    for (std::size_t i = 0; i < 5; ++i)
    {
        LoadedImage const img = read_image(image_stem(dir / "out", i).string() + ".bin");
        CHECK(img.meta.image_index == i);
        CHECK(img.meta.seed == 3);
        CHECK(img.meta.crc32 == r.image_crc32[i]);
    }
    CHECK(image_stem(dir, 42).filename() == "img_000042");
    fs::remove_all(dir);
}

TEST_CASE("campaign I/O failure aborts with the image index")
{
    fs::path const dir = test::scratch_dir("abort");
    test::write_file(dir / "not_a_dir", "x");
    CampaignPlan plan;
    plan.n_images = 3;
    plan.io_enabled = true;
    plan.output_dir = dir / "not_a_dir";
    try
    {
        run_campaign(plan, test::desk_config(8), Executor::serial());
        FAIL("campaign did not abort");
    }
    catch (CampaignAborted const& e)
    {
        CHECK(e.image_index() == 0);
    }
    catch (IoError const&)
    {
        // Directory creation failed before any image was attempted.
    }
    fs::remove_all(dir);
}

TEST_CASE("numerical faults are recorded and the campaign continues")
{
    SimulationConfig cfg = test::desk_config(8);
    cfg.sf_table = std::make_shared<StructureFactorTable>(StructureFactorTable{{}, 1e200});
    fs::path const dir = test::scratch_dir("fault");
    CampaignPlan plan;
    plan.n_images = 3;
    plan.ranks = 2;
    plan.io_enabled = true;
    plan.output_dir = dir;
    CampaignReport const r = run_campaign(plan, cfg, Executor::serial());
    REQUIRE(r.faults.size() == 3);
    CHECK(r.faults[0].image_index == 0);
    CHECK(r.faults[2].image_index == 2);
    CHECK(r.faults[1].message.find(spots_label) != std::string::npos);
    CHECK_FALSE(fs::exists(image_stem(dir, 0).string() + ".bin"));
    fs::remove_all(dir);
}

TEST_CASE("simulated I/O latency adds wall time")
{
    SimulationConfig const cfg = test::desk_config(8);
    CampaignPlan plan;
    plan.n_images = 6;
    CampaignReport const quiet = run_campaign(plan, cfg, Executor::serial());
    plan.io_enabled = true;
    plan.io_latency_ms = 15;
    CampaignReport const slow = run_campaign(plan, cfg, Executor::serial());
    CHECK(slow.total_wall_s > quiet.total_wall_s);
    CHECK(slow.total_wall_s >= 6 * 0.015);
    CHECK(slow.image_crc32 == quiet.image_crc32);

    // Two ranks on one device overlap one rank's latency with the other's compute.
    plan.ranks = 2;
    plan.devices = 1;
    plan.ranks_per_device = 2;
    CampaignReport const shared = run_campaign(plan, cfg, Executor::serial());
    CHECK(shared.total_wall_s < slow.total_wall_s);
}

TEST_CASE("plan validation")
{
    CampaignPlan plan;
    plan.n_images = 0;
    CHECK_THROWS_AS(validate(plan), InvalidArgument);
    plan = {};
    plan.devices = 0;
    CHECK_THROWS_AS(validate(plan), InvalidArgument);
    plan = {};
    plan.io_latency_ms = -1;
    CHECK_THROWS_AS(validate(plan), InvalidArgument);
}

TEST_CASE("strong scaling table")
{
    SimulationConfig const cfg = test::desk_config(16);
    ScalingResult const one = strong_scaling(cfg, 4, {1});
    REQUIRE(one.rows.size() == 1);
    CHECK(one.rows[0].speedup == 1.0);
    CHECK(one.rows[0].efficiency == 1.0);

    ScalingResult const sweep = strong_scaling(cfg, 8, {1, 2, 4}, {.repeat = 2});
    REQUIRE(sweep.rows.size() == 3);
    for (auto const& row : sweep.rows)
    {
        CHECK(row.speedup == doctest::Approx(sweep.rows[0].wall_s / row.wall_s));
        CHECK(row.efficiency == doctest::Approx(row.speedup / static_cast<double>(row.workers)));
    }
    CHECK(sweep.reports[2].plan.ranks == 4);
    CHECK(sweep.reports[2].image_crc32 == sweep.reports[0].image_crc32);

    CsvTable const csv = scaling_csv(sweep.rows);
    CHECK(csv.header == std::vector<std::string>{"workers", "wall_s", "speedup", "efficiency"});
    CHECK(csv.rows.size() == 3);
    auto const back = scaling_from_csv(csv);
    CHECK(back[1].wall_s == sweep.rows[1].wall_s);
    CHECK(render_scaling_table(sweep.rows, TableFormat::markdown).find("| workers |") != std::string::npos);

    CHECK_THROWS_AS(strong_scaling(cfg, 4, {}), InvalidArgument);
    CHECK_THROWS_AS(strong_scaling(cfg, 4, {2, 1}), InvalidArgument);
}

TEST_CASE("tenancy sweep")
{
    SimulationConfig const cfg = test::desk_config(16);
    TenancyResult const t = tenancy_sweep(cfg, 6, 1, {1, 2, 3}, {.io_enabled = true, .io_latency_ms = 5});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[2].ranks == 3);
    CHECK(t.rows[1].throughput == doctest::Approx(6 / t.rows[1].wall_s));
    auto const back = tenancy_from_csv(tenancy_csv(t.rows));
    CHECK(back[2].ranks_per_device == 3);
    CHECK(back[0].throughput == t.rows[0].throughput);
}

TEST_CASE("kernel time table")
{
    CHECK(format_speedup(8.28, 6.98) == "+15.7 %");
    CHECK(format_speedup(1.87, 1.76) == "+5.9 %");
    CHECK(format_speedup(0.13, 0.12) == "+7.7 %");
    CHECK(format_speedup(1.0, 1.5) == "-50.0 %");
    CHECK_THROWS_AS(format_speedup(0.0, 1.0), ReportError);

    ExecutorTimings const cuda{"baseline", {{spots_label, 8.28}, {background_label, 1.87}, {add_array_label, 0.13}}};
    ExecutorTimings const kokkos{"variant", {{spots_label, 6.98}, {background_label, 1.76}, {add_array_label, 0.12}}};
    std::string const table = kernel_time_table({cuda, kokkos}, "baseline");
    CHECK(table.find("Speed-up") != std::string::npos);
    CHECK(table.find("+15.7 %") != std::string::npos);
    CHECK(table.find("+5.9 %") != std::string::npos);
    CHECK(table.find("+7.7 %") != std::string::npos);
    CHECK(table.find("8.28 ms") != std::string::npos);
    // Kernel columns follow pipeline order.
    CHECK(table.find(spots_label) < table.find(background_label));
    CHECK(table.find(background_label) < table.find(add_array_label));

    CHECK(kernel_time_table({cuda}, "baseline").find("Speed-up") == std::string::npos);
    CHECK_THROWS_AS(kernel_time_table({cuda, kokkos}, "missing"), ReportError);
    ExecutorTimings const zero{"zero", {{spots_label, 0.0}}};
    CHECK_THROWS_AS(kernel_time_table({zero, kokkos}, "zero"), ReportError);

    std::string const md = kernel_time_table({cuda, kokkos}, "baseline", TableFormat::markdown);
    CHECK(md.find("| --- | ---: |") != std::string::npos);

    auto const back = kernel_timings_from_csv(kernel_timings_csv({cuda, kokkos}));
    REQUIRE(back.size() == 2);
    CHECK(back[1].executor == "variant");
    CHECK(back[1].mean_ms.at(spots_label) == 6.98);
}
