//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/config.cpp
//---------------------------------------------------------------------------//
#include "xtrace/io/config.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <map>
#include <set>

#include "toml_lite.hpp"
#include "xtrace/error.hpp"
#include "xtrace/io/tables.hpp"

namespace xtrace
{
namespace
{
using toml_lite::Array;
using toml_lite::Document;
using toml_lite::Entry;
using toml_lite::Value;

std::map<std::string, std::set<std::string>> const schema = {
    {"crystal",
     {"cell", "n_cells", "misset_deg", "random_orientation", "mosaic_domains",
      "mosaic_spread_deg", "mosaic_rotations", "hkl_file", "default_f"}},
    {"detector",
     {"pixels", "pixel_size_m", "distance_m", "beam_center_px", "fast_axis", "slow_axis"}},
    {"beam", {"wavelength_A", "spectrum", "fluence", "polarization", "direction"}},
    {"background", {"file", "points", "thickness_factor"}},
    {"simulation", {"oversample", "seed"}},
    {"campaign",
     {"images", "ranks", "devices", "ranks_per_device", "io_enabled", "io_latency_ms"}},
};

//---------------------------------------------------------------------------//
/*!
 * Typed access to a parsed document. Every key read is marked; whatever is
 * left over afterwards is an unknown key.
 */
class Reader
{
  public:
    explicit Reader(Document doc) : doc_(std::move(doc)) {}

    bool has_section(std::string const& section) const { return doc_.count(section) > 0; }

    bool has(std::string const& section, std::string const& key) const
    {
        auto const s = doc_.find(section);
        return s != doc_.end() && s->second.count(key);
    }

    Value const* find(std::string const& section, std::string const& key)
    {
        auto const s = doc_.find(section);
        if (s == doc_.end())
        {
            return nullptr;
        }
        auto const k = s->second.find(key);
        if (k == s->second.end())
        {
            return nullptr;
        }
        used_.insert(section + "." + key);
        return &k->second.value;
    }

    Value const& require(std::string const& section, std::string const& key)
    {
        Value const* v = find(section, key);
        if (!v)
        {
            throw ConfigError(section + "." + key, "required key is missing");
        }
        return *v;
    }

    //! Reject sections and keys outside the schema.
    void check_schema() const
    {
        for (auto const& [section, table] : doc_)
        {
            auto const known = schema.find(section);
            if (!section.empty() && known == schema.end())
            {
                throw ConfigError(section, "unknown section [" + section + "]");
            }
            for (auto const& [key, entry] : table)
            {
                if (section.empty() || !known->second.count(key))
                {
                    std::string const full = section.empty() ? key : section + "." + key;
                    throw ConfigError(full, "unknown key (line " + std::to_string(entry.line) + ")");
                }
            }
        }
    }

    //! Every key in the document must have been consumed.
    void finish() const
    {
        for (auto const& [section, table] : doc_)
        {
            for (auto const& [key, entry] : table)
            {
                if (!used_.count(section + "." + key))
                {
                    throw ConfigError(section + "." + key,
                                      "key not used (line " + std::to_string(entry.line) + ")");
                }
            }
        }
    }

  private:
    Document doc_;
    std::set<std::string> used_;
};

//---------------------------------------------------------------------------//
double as_number(Value const& v, std::string const& key)
{
    if (auto const* d = std::get_if<double>(&v.data))
    {
        return *d;
    }
    if (auto const* i = std::get_if<std::int64_t>(&v.data))
    {
        return static_cast<double>(*i);
    }
    throw ConfigError(key, std::string("expected a number, got ") + toml_lite::type_name(v));
}

std::int64_t as_integer(Value const& v, std::string const& key)
{
    if (auto const* i = std::get_if<std::int64_t>(&v.data))
    {
        return *i;
    }
    throw ConfigError(key, std::string("expected an integer, got ") + toml_lite::type_name(v));
}

bool as_bool(Value const& v, std::string const& key)
{
    if (auto const* b = std::get_if<bool>(&v.data))
    {
        return *b;
    }
    throw ConfigError(key, std::string("expected true or false, got ") + toml_lite::type_name(v));
}

std::string as_string(Value const& v, std::string const& key)
{
    if (auto const* s = std::get_if<std::string>(&v.data))
    {
        return *s;
    }
    throw ConfigError(key, std::string("expected a string, got ") + toml_lite::type_name(v));
}

Array const& as_array(Value const& v, std::string const& key)
{
    if (auto const* a = std::get_if<Array>(&v.data))
    {
        return *a;
    }
    throw ConfigError(key, std::string("expected an array, got ") + toml_lite::type_name(v));
}

std::vector<double> as_numbers(Value const& v, std::string const& key, std::size_t expected)
{
    Array const& a = as_array(v, key);
    if (expected != 0 && a.size() != expected)
    {
        throw ConfigError(key, "expected " + std::to_string(expected) + " values, got "
                                   + std::to_string(a.size()));
    }
    std::vector<double> out;
    for (Value const& item : a)
    {
        out.push_back(as_number(item, key));
    }
    return out;
}

Vec3 as_vec3(Value const& v, std::string const& key)
{
    auto const n = as_numbers(v, key, 3);
    return {n[0], n[1], n[2]};
}

std::size_t as_count(Value const& v, std::string const& key)
{
    std::int64_t const n = as_integer(v, key);
    if (n < 1)
    {
        throw ConfigError(key, "must be >= 1, got " + std::to_string(n));
    }
    return static_cast<std::size_t>(n);
}

double positive(double v, std::string const& key)
{
    if (!(v > 0))
    {
        throw ConfigError(key, "must be > 0");
    }
    return v;
}

double non_negative(double v, std::string const& key)
{
    if (!(v >= 0))
    {
        throw ConfigError(key, "must be >= 0");
    }
    return v;
}

std::filesystem::path resolve(std::filesystem::path const& base, std::string const& p)
{
    std::filesystem::path const path(p);
    return path.is_absolute() || base.empty() ? path : base / path;
}

// Run a validator and re-raise its failure as a config error for `key`.
template<class F>
void check(std::string const& key, F&& f)
{
    try
    {
        f();
    }
    catch (ConfigError const&)
    {
        throw;
    }
    catch (Error const& e)
    {
        throw ConfigError(key, e.what());
    }
}

//---------------------------------------------------------------------------//
void read_crystal(Reader& r, SimulationConfig& cfg, std::filesystem::path const& base)
{
    auto const cell = as_numbers(r.require("crystal", "cell"), "crystal.cell", 6);
    cfg.cell = {cell[0], cell[1], cell[2], cell[3], cell[4], cell[5]};
    check("crystal.cell", [&] { validate(cfg.cell); });

    auto const n = r.require("crystal", "n_cells");
    Array const& counts = as_array(n, "crystal.n_cells");
    if (counts.size() != 3)
    {
        throw ConfigError("crystal.n_cells", "expected 3 values, got " + std::to_string(counts.size()));
    }
    for (int i = 0; i < 3; ++i)
    {
        std::int64_t const c = as_integer(counts[i], "crystal.n_cells");
        if (c < 1 || c > std::numeric_limits<int>::max())
        {
            throw ConfigError("crystal.n_cells", "cell counts must be >= 1");
        }
        cfg.n_cells[i] = static_cast<int>(c);
    }

    if (auto const* v = r.find("crystal", "misset_deg"))
    {
        auto const m = as_numbers(*v, "crystal.misset_deg", 3);
        cfg.misset_deg = {m[0], m[1], m[2]};
    }
    if (auto const* v = r.find("crystal", "random_orientation"))
    {
        cfg.random_orientation = as_bool(*v, "crystal.random_orientation");
    }

    if (auto const* v = r.find("crystal", "mosaic_rotations"))
    {
        if (r.has("crystal", "mosaic_domains") || r.has("crystal", "mosaic_spread_deg"))
        {
            throw ConfigError("crystal.mosaic_rotations",
                              "cannot be combined with mosaic_domains or mosaic_spread_deg");
        }
        std::vector<Mat3> rots;
        for (Value const& item : as_array(*v, "crystal.mosaic_rotations"))
        {
            auto const e = as_numbers(item, "crystal.mosaic_rotations", 9);
            rots.push_back({{Vec3{e[0], e[1], e[2]}, Vec3{e[3], e[4], e[5]}, Vec3{e[6], e[7], e[8]}}});
        }
        MosaicDomainSet set;
        set.rotations = rots;
        check("crystal.mosaic_rotations", [&] { validate(set); });
        cfg.mosaic_domains = rots.size();
        cfg.mosaic_rotations = std::move(rots);
    }
    if (auto const* v = r.find("crystal", "mosaic_domains"))
    {
        cfg.mosaic_domains = as_count(*v, "crystal.mosaic_domains");
    }
    if (auto const* v = r.find("crystal", "mosaic_spread_deg"))
    {
        cfg.mosaic_spread_deg = non_negative(as_number(*v, "crystal.mosaic_spread_deg"),
                                             "crystal.mosaic_spread_deg");
    }

    StructureFactorTable table;
    if (auto const* v = r.find("crystal", "hkl_file"))
    {
        cfg.hkl_file = resolve(base, as_string(*v, "crystal.hkl_file"));
        table = load_hkl(*cfg.hkl_file);
    }
    if (auto const* v = r.find("crystal", "default_f"))
    {
        table.default_f = non_negative(as_number(*v, "crystal.default_f"), "crystal.default_f");
    }
    cfg.sf_table = std::make_shared<StructureFactorTable const>(std::move(table));
}

void read_detector(Reader& r, SimulationConfig& cfg)
{
    DetectorPanel& panel = cfg.panel;
    Array const& pixels = as_array(r.require("detector", "pixels"), "detector.pixels");
    if (pixels.size() != 2)
    {
        throw ConfigError("detector.pixels", "expected [slow, fast]");
    }
    panel.slow_pixels = as_count(pixels[0], "detector.pixels");
    panel.fast_pixels = as_count(pixels[1], "detector.pixels");
    panel.pixel_size = positive(as_number(r.require("detector", "pixel_size_m"), "detector.pixel_size_m"),
                                "detector.pixel_size_m");
    panel.distance = positive(as_number(r.require("detector", "distance_m"), "detector.distance_m"),
                              "detector.distance_m");
    panel.beam_center = {0.5 * static_cast<double>(panel.slow_pixels),
                         0.5 * static_cast<double>(panel.fast_pixels)};
    if (auto const* v = r.find("detector", "beam_center_px"))
    {
        auto const c = as_numbers(*v, "detector.beam_center_px", 2);
        panel.beam_center = {c[0], c[1]};
    }
    if (auto const* v = r.find("detector", "fast_axis"))
    {
        panel.fast_axis = as_vec3(*v, "detector.fast_axis");
    }
    if (auto const* v = r.find("detector", "slow_axis"))
    {
        panel.slow_axis = as_vec3(*v, "detector.slow_axis");
    }
    check("detector", [&] { validate(panel); });
}

void read_beam(Reader& r, SimulationConfig& cfg)
{
    BeamSpectrum& beam = cfg.spectrum;
    bool const has_single = r.has("beam", "wavelength_A");
    bool const has_list = r.has("beam", "spectrum");
    if (has_single == has_list)
    {
        throw ConfigError(has_single ? "beam.spectrum" : "beam.wavelength_A",
                          "exactly one of beam.wavelength_A and beam.spectrum is required");
    }
    if (has_single)
    {
        double const w = positive(as_number(r.require("beam", "wavelength_A"), "beam.wavelength_A"),
                                  "beam.wavelength_A");
        beam.samples = {{w, 1.0}};
    }
    else
    {
        for (Value const& item : as_array(r.require("beam", "spectrum"), "beam.spectrum"))
        {
            auto const s = as_numbers(item, "beam.spectrum", 2);
            beam.samples.push_back({s[0], s[1]});
        }
    }
    beam.fluence = non_negative(as_number(r.require("beam", "fluence"), "beam.fluence"), "beam.fluence");
    if (auto const* v = r.find("beam", "polarization"))
    {
        beam.polarization_on = as_bool(*v, "beam.polarization");
    }
    if (auto const* v = r.find("beam", "direction"))
    {
        beam.beam_direction = as_vec3(*v, "beam.direction");
    }
    check(has_single ? "beam.wavelength_A" : "beam.spectrum", [&] { validate(beam); });
}

void read_background(Reader& r, SimulationConfig& cfg, std::filesystem::path const& base)
{
    if (!r.has_section("background"))
    {
        return;
    }
    bool const has_file = r.has("background", "file");
    bool const has_points = r.has("background", "points");
    if (has_file == has_points)
    {
        throw ConfigError("background.file",
                          "exactly one of background.file and background.points is required");
    }
    if (has_file)
    {
        cfg.background_file = resolve(base, as_string(r.require("background", "file"), "background.file"));
        cfg.background = load_background(*cfg.background_file);
    }
    else
    {
        BackgroundProfile profile;
        for (Value const& item : as_array(r.require("background", "points"), "background.points"))
        {
            auto const p = as_numbers(item, "background.points", 2);
            profile.points.push_back({p[0], p[1]});
        }
        check("background.points", [&] { validate(profile); });
        cfg.background = std::move(profile);
    }
    if (auto const* v = r.find("background", "thickness_factor"))
    {
        cfg.thickness_factor = non_negative(as_number(*v, "background.thickness_factor"),
                                            "background.thickness_factor");
    }
}

void read_simulation(Reader& r, SimulationConfig& cfg)
{
    if (auto const* v = r.find("simulation", "oversample"))
    {
        std::size_t const os = as_count(*v, "simulation.oversample");
        if (os > 64)
        {
            throw ConfigError("simulation.oversample", "must be <= 64");
        }
        cfg.oversample = static_cast<int>(os);
    }
    if (auto const* v = r.find("simulation", "seed"))
    {
        std::int64_t const s = as_integer(*v, "simulation.seed");
        if (s < 0)
        {
            throw ConfigError("simulation.seed", "must be >= 0");
        }
        cfg.seed = static_cast<std::uint64_t>(s);
    }
}

void read_campaign(Reader& r, SimulationConfig& cfg)
{
    CampaignPlan& plan = cfg.campaign;
    plan.seed = cfg.seed;
    if (auto const* v = r.find("campaign", "images"))
    {
        plan.n_images = as_count(*v, "campaign.images");
    }
    if (auto const* v = r.find("campaign", "devices"))
    {
        plan.devices = as_count(*v, "campaign.devices");
    }
    if (auto const* v = r.find("campaign", "ranks_per_device"))
    {
        plan.ranks_per_device = as_count(*v, "campaign.ranks_per_device");
    }
    plan.ranks = plan.devices * plan.ranks_per_device;
    if (auto const* v = r.find("campaign", "ranks"))
    {
        plan.ranks = as_count(*v, "campaign.ranks");
    }
    if (auto const* v = r.find("campaign", "io_enabled"))
    {
        plan.io_enabled = as_bool(*v, "campaign.io_enabled");
    }
    if (auto const* v = r.find("campaign", "io_latency_ms"))
    {
        plan.io_latency_ms = non_negative(as_number(*v, "campaign.io_latency_ms"),
                                          "campaign.io_latency_ms");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
Mat3 misset_rotation(std::array<double, 3> const& misset_deg)
{
    constexpr double to_rad = std::numbers::pi / 180.0;
    Mat3 const rx = axis_angle_rotation({1, 0, 0}, misset_deg[0] * to_rad);
    Mat3 const ry = axis_angle_rotation({0, 1, 0}, misset_deg[1] * to_rad);
    Mat3 const rz = axis_angle_rotation({0, 0, 1}, misset_deg[2] * to_rad);
    return rz * (ry * rx);
}

SimulationConfig parse_config(std::string const& text,
                              std::string const& source,
                              std::filesystem::path const& base_dir)
{
    Reader reader(toml_lite::parse(text, source));
    reader.check_schema();
    SimulationConfig cfg;
    read_crystal(reader, cfg, base_dir);
    read_detector(reader, cfg);
    read_beam(reader, cfg);
    read_background(reader, cfg, base_dir);
    read_simulation(reader, cfg);
    read_campaign(reader, cfg);
    reader.finish();
    cfg.source = source;
    return cfg;
}

SimulationConfig load_config(std::filesystem::path const& path)
{
    SimulationConfig cfg = parse_config(read_text_file(path), path.string(), path.parent_path());
    // Absolute, so a sidecar's config echo stays usable from any directory.
    cfg.source = std::filesystem::absolute(path).lexically_normal();
    return cfg;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
