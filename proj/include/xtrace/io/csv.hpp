//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/io/csv.hpp
//! Plain comma-separated tables: header row, no quoting, '.' decimals.
//---------------------------------------------------------------------------//
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace xtrace
{
//---------------------------------------------------------------------------//
struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    //! Column index; throws ParseError naming the missing column.
    std::size_t column(std::string const& name) const;
};

CsvTable read_csv(std::filesystem::path const& path);
void write_csv(CsvTable const& table, std::filesystem::path const& path);

//! Locale-independent shortest round-trip formatting.
std::string format_number(double value);
//! Strict number parse; throws ParseError with the source and line.
double parse_number(std::string const& text, std::string const& source, std::size_t line);

//---------------------------------------------------------------------------//
}  // namespace xtrace
