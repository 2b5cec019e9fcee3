//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/io/tables.hpp
//! Whitespace-separated text tables: `h k l F` reflection lists and
//! `stol f_bg` background profiles. `#` starts a comment.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "xtrace/core/model.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
//! Non-fatal findings while loading (e.g. duplicate reflections).
struct LoadWarnings
{
    std::vector<std::string> messages;
};

//! Reflection list; duplicates keep the last value and add a warning.
//! Warnings go to std::clog when \c warnings is null.
StructureFactorTable load_hkl(std::filesystem::path const& path, LoadWarnings* warnings = nullptr);
StructureFactorTable
parse_hkl(std::string const& text, std::string const& source, LoadWarnings* warnings = nullptr);
void write_hkl(StructureFactorTable const& table, std::filesystem::path const& path);

BackgroundProfile load_background(std::filesystem::path const& path);
BackgroundProfile parse_background(std::string const& text, std::string const& source);
void write_background(BackgroundProfile const& profile, std::filesystem::path const& path);

//! Whole file as a string; IoError when unreadable.
std::string read_text_file(std::filesystem::path const& path);

//---------------------------------------------------------------------------//
}  // namespace xtrace
