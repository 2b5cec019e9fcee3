//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/io/config.hpp
//! Simulation configuration files. See docs/config.md for every key.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xtrace/campaign/plan.hpp"
#include "xtrace/core/model.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
/*!
 * Fully validated inputs for a simulation campaign.
 *
 * Crystal orientation and mosaic rotations are per-image quantities and are
 * derived from these settings by \c build_crystal.
 */
struct SimulationConfig
{
    // Crystal
    UnitCell cell;
    std::array<int, 3> n_cells{1, 1, 1};
    std::array<double, 3> misset_deg{0, 0, 0};  //!< Rx, then Ry, then Rz
    bool random_orientation = false;
    std::size_t mosaic_domains = 1;
    double mosaic_spread_deg = 0;
    std::optional<std::vector<Mat3>> mosaic_rotations;  //!< Explicit list
    std::optional<std::filesystem::path> hkl_file;
    std::shared_ptr<StructureFactorTable const> sf_table
        = std::make_shared<StructureFactorTable const>();

    // Detector and beam
    DetectorPanel panel;
    BeamSpectrum spectrum;

    // Background (absent: no background kernel)
    std::optional<std::filesystem::path> background_file;
    std::optional<BackgroundProfile> background;
    double thickness_factor = 1;

    // Simulation
    int oversample = 1;
    std::uint64_t seed = 0;

    // Campaign defaults (CLI flags may override)
    CampaignPlan campaign;

    std::filesystem::path source;  //!< File the config was loaded from
};

//! Parse and validate; relative table paths resolve against the file.
SimulationConfig load_config(std::filesystem::path const& path);

//! Parse from memory; relative paths resolve against \c base_dir.
SimulationConfig parse_config(std::string const& text,
                              std::string const& source,
                              std::filesystem::path const& base_dir);

//! Crystal orientation from the misset angles (degrees).
Mat3 misset_rotation(std::array<double, 3> const& misset_deg);

//---------------------------------------------------------------------------//
}  // namespace xtrace
