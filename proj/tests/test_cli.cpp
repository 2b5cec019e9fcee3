//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_cli.cpp
//! End-to-end exit codes of the xtrace executable.
//---------------------------------------------------------------------------//
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sys/wait.h>

#include "support.hpp"
#include "xtrace/io/csv.hpp"
#include "xtrace/io/image_io.hpp"
#include "xtrace/io/tables.hpp"

using namespace xtrace;
namespace fs = std::filesystem;

namespace
{
struct Run
{
    int code = -1;
    std::string out;
    std::string err;
};

fs::path const work = test::scratch_dir("cli");

Run xtrace_cli(std::string const& args)
{
    static int counter = 0;
    fs::path const out = work / ("out" + std::to_string(counter) + ".txt");
    fs::path const err = work / ("err" + std::to_string(counter++) + ".txt");
    std::string const cmd = std::string("\"") + XTRACE_CLI + "\" " + args + " >\"" + out.string()
                            + "\" 2>\"" + err.string() + "\"";
    int const status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = read_text_file(out);
    r.err = read_text_file(err);
    return r;
}

std::string const small_config = R"([crystal]
cell = [40.0, 40.0, 40.0, 90.0, 90.0, 90.0]
n_cells = [5, 5, 5]
random_orientation = true
mosaic_domains = 2
mosaic_spread_deg = 0.1
default_f = 50.0

[detector]
pixels = [24, 24]
pixel_size_m = 0.002
distance_m = 0.1

[beam]
wavelength_A = 1.0
fluence = 1e24
polarization = true

[background]
points = [[0.0, 2.5], [0.5, 1.0]]

[simulation]
seed = 77
)";

fs::path config_file(std::string const& name, std::string const& text)
{
    fs::path const p = work / name;
    test::write_file(p, text);
    return p;
}

std::string q(fs::path const& p)
{
    return "\"" + p.string() + "\"";
}

std::string bytes_of(fs::path const& p)
{
    return read_text_file(p);
}
}  // namespace

TEST_CASE("help exits 0 and lists every flag")
{
    Run const top = xtrace_cli("--help");
    CHECK(top.code == 0);
    for (char const* sub : {"simulate", "benchmark", "report", "inspect"})
        CHECK(top.out.find(sub) != std::string::npos);

    Run const sim = xtrace_cli("simulate --help");
    CHECK(sim.code == 0);
    for (char const* flag : {"--config", "--out", "--images", "--executor", "--workers", "--seed", "--no-io"})
        CHECK(sim.out.find(flag) != std::string::npos);

    Run const bench = xtrace_cli("benchmark --help");
    CHECK(bench.code == 0);
    for (char const* flag : {"--config", "--images", "--workers-list", "--ranks", "--devices",
                             "--ranks-per-device", "--io-latency-ms", "--csv", "--repeat"})
        CHECK(bench.out.find(flag) != std::string::npos);

    CHECK(xtrace_cli("report --help").code == 0);
    CHECK(xtrace_cli("inspect --help").code == 0);
}

TEST_CASE("usage errors exit 1")
{
    fs::path const cfg = config_file("usage.toml", small_config);
    CHECK(xtrace_cli("").code == 1);
    CHECK(xtrace_cli("frobnicate").code == 1);
    CHECK(xtrace_cli("simulate --config " + q(cfg) + " --no-io --out " + q(work / "x")).code == 1);
    CHECK(xtrace_cli("simulate --config " + q(cfg) + " --no-io --executor serial --workers 2").code == 1);
    CHECK(xtrace_cli("simulate --config " + q(cfg) + " --no-io --executor gpu").code == 1);
    CHECK(xtrace_cli("simulate --config " + q(cfg)).code == 1);
    CHECK(xtrace_cli("simulate --config " + q(work / "absent.toml") + " --no-io").code == 1);
}

TEST_CASE("simulate")
{
    fs::path const cfg = config_file("sim.toml", small_config);

    Run const smoke = xtrace_cli("simulate --config " + q(cfg) + " --images 2 --out " + q(work / "s1")
                                 + " --executor serial");
    CHECK(smoke.code == 0);
    CHECK(fs::exists(work / "s1" / "img_000000.bin"));
    CHECK(fs::exists(work / "s1" / "img_000000.json"));
    CHECK(fs::exists(work / "s1" / "img_000001.bin"));
    CHECK(fs::exists(work / "s1" / "img_000001.json"));
    CHECK(smoke.out.find("images/s") != std::string::npos);
    CHECK(smoke.out.find("nanobragg_spots") != std::string::npos);

    Run const dry = xtrace_cli("simulate --config " + q(cfg) + " --images 2 --no-io");
    CHECK(dry.code == 0);
    CHECK(dry.out.find("images/s") != std::string::npos);

    Run const par = xtrace_cli("simulate --config " + q(cfg) + " --images 2 --out " + q(work / "s4")
                               + " --workers 4");
    CHECK(par.code == 0);
    Run const again = xtrace_cli("simulate --config " + q(cfg) + " --images 2 --out " + q(work / "s1b")
                                 + " --executor serial");
    CHECK(again.code == 0);
    for (char const* f : {"img_000000.bin", "img_000001.bin"})
    {
        CHECK(bytes_of(work / "s4" / f) == bytes_of(work / "s1" / f));
        CHECK(bytes_of(work / "s1b" / f) == bytes_of(work / "s1" / f));
    }
    Run const reseeded = xtrace_cli("simulate --config " + q(cfg) + " --images 1 --seed 5 --out "
                                    + q(work / "s5"));
    CHECK(reseeded.code == 0);
    CHECK(bytes_of(work / "s5" / "img_000000.bin") != bytes_of(work / "s1" / "img_000000.bin"));

    Run const preview = xtrace_cli("simulate --config " + q(cfg) + " --images 1 --preview --out "
                                   + q(work / "sp"));
    CHECK(preview.code == 0);
    CHECK(fs::exists(work / "sp" / "img_000000.pgm"));
}

TEST_CASE("simulate error exits")
{
    std::string typo = small_config;
    typo.insert(typo.find("[beam]"), "detectro_distance = 0.2\n");
    Run const key = xtrace_cli("simulate --no-io --config " + q(config_file("typo.toml", typo)));
    CHECK(key.code == 1);
    CHECK(key.err.find("detector.detectro_distance") != std::string::npos);

    fs::path const cfg = config_file("io.toml", small_config);
    test::write_file(work / "blocker", "x");
    Run const io = xtrace_cli("simulate --config " + q(cfg) + " --out " + q(work / "blocker"));
    CHECK(io.code == 2);

    std::string hot = small_config;
    hot.replace(hot.find("default_f = 50.0"), 16, "default_f = 1e200");
    Run const nan = xtrace_cli("simulate --no-io --config " + q(config_file("hot.toml", hot)));
    CHECK(nan.code == 3);
    CHECK(nan.err.find("pixel") != std::string::npos);

    ::setenv("XTRACE_WORKERS", "zero", 1);
    Run const env = xtrace_cli("simulate --no-io --config " + q(cfg));
    ::unsetenv("XTRACE_WORKERS");
    CHECK(env.code == 1);
    CHECK(env.err.find("XTRACE_WORKERS") != std::string::npos);
}

TEST_CASE("inspect")
{
    fs::path const dir = work / "inspect";
    fs::create_directories(dir);
    ImageMetadata meta;
    meta.slow = 4;
    meta.fast = 5;
    meta.pixel_size = 1e-4;
    meta.distance = 0.1;
    meta.spectrum = {{1.0, 1.0}};
    write_image(AccumImage(4, 5, 2.5), dir / "flat", meta);

    Run const ok = xtrace_cli("inspect " + q(dir / "flat.bin"));
    CHECK(ok.code == 0);
    CHECK(ok.out.find("min 2.5\n") != std::string::npos);
    CHECK(ok.out.find("max 2.5\n") != std::string::npos);
    CHECK(ok.out.find("mean 2.5\n") != std::string::npos);
    CHECK(ok.out.find("total 50\n") != std::string::npos);
    CHECK(ok.out.find("16 bins") != std::string::npos);
    CHECK(ok.out.find("cumulative         20") != std::string::npos);

    std::string payload = read_text_file(dir / "flat.bin");
    payload[7] = static_cast<char>(payload[7] ^ 0x10);
    test::write_file(dir / "bad.bin", payload);
    fs::copy_file(dir / "flat.json", dir / "bad.json");
    Run const crc = xtrace_cli("inspect " + q(dir / "bad.bin"));
    CHECK(crc.code == 4);
    CHECK(crc.err.find("CRC") != std::string::npos);

    test::write_file(dir / "lonely.bin", payload);
    CHECK(xtrace_cli("inspect " + q(dir / "lonely.bin")).code == 2);
}

TEST_CASE("benchmark and report")
{
    fs::path const cfg = config_file("bench.toml", small_config);
    fs::path const scaling = work / "scaling.csv";
    fs::path const kernels = work / "kernels.csv";
    Run const b = xtrace_cli("benchmark --config " + q(cfg) + " --images 8 --workers-list 1,2,4 --repeat 2 --csv "
                             + q(scaling) + " --kernel-csv " + q(kernels));
    CHECK(b.code == 0);
    CsvTable const table = read_csv(scaling);
    CHECK(table.header == std::vector<std::string>{"workers", "wall_s", "speedup", "efficiency"});
    CHECK(table.rows.size() == 3);
    CHECK(table.rows[0][2] == "1");

    Run const single = xtrace_cli("benchmark --config " + q(cfg) + " --images 2 --workers-list 1 --csv "
                                  + q(work / "one.csv"));
    CHECK(single.code == 0);
    CHECK(read_csv(work / "one.csv").rows[0][2] == "1");
    CHECK(read_csv(work / "one.csv").rows[0][3] == "1");

    fs::path const tenancy = work / "tenancy.csv";
    Run const t = xtrace_cli("benchmark --config " + q(cfg) + " --images 8 --devices 1 --ranks-per-device 1,2"
                             + " --io-latency-ms 20 --tenancy-csv " + q(tenancy));
    CHECK(t.code == 0);
    CsvTable const ten = read_csv(tenancy);
    REQUIRE(ten.rows.size() == 2);
    CHECK(std::stod(ten.rows[1][3]) > std::stod(ten.rows[0][3]));

    Run const r1 = xtrace_cli("report --csv " + q(scaling));
    CHECK(r1.code == 0);
    CHECK(r1.out.find("speedup") != std::string::npos);
    Run const r2 = xtrace_cli("report --csv " + q(kernels) + " --format md");
    CHECK(r2.code == 0);
    CHECK(r2.out.find("Speed-up") != std::string::npos);
    CHECK(r2.out.find(" %") != std::string::npos);
    CHECK(xtrace_cli("report --csv " + q(tenancy) + " --format md").code == 0);

    test::write_file(work / "empty.csv", "");
    CHECK(xtrace_cli("report --csv " + q(work / "empty.csv")).code == 1);
    test::write_file(work / "header_only.csv", "workers,wall_s,speedup,efficiency\n");
    CHECK(xtrace_cli("report --csv " + q(work / "header_only.csv")).code == 1);
    test::write_file(work / "wrong.csv", "workers,wall_s,speedup\n1,2,1\n");
    Run const wrong = xtrace_cli("report --csv " + q(work / "wrong.csv"));
    CHECK(wrong.code == 1);
    CHECK(wrong.err.find("efficiency") != std::string::npos);
    CHECK(xtrace_cli("report --csv " + q(work / "missing.csv")).code == 2);
}
