//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/csv.cpp
//---------------------------------------------------------------------------//
#include "xtrace/io/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xtrace/error.hpp"
#include "xtrace/io/tables.hpp"

namespace xtrace
{
namespace
{
std::vector<std::string> split_commas(std::string const& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ','))
    {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',')
    {
        fields.emplace_back();
    }
    return fields;
}
}  // namespace

//---------------------------------------------------------------------------//
std::size_t CsvTable::column(std::string const& name) const
{
    for (std::size_t i = 0; i < header.size(); ++i)
    {
        if (header[i] == name)
        {
            return i;
        }
    }
    throw ParseError("csv header", 1, "missing column '" + name + "'");
}

CsvTable read_csv(std::filesystem::path const& path)
{
    std::string const text = read_text_file(path);
    std::string const source = path.string();
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
        {
            line.pop_back();
        }
        if (line.empty())
        {
            continue;
        }
        auto fields = split_commas(line);
        if (table.header.empty())
        {
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
        {
            throw ParseError(source,
                             line_no,
                             "expected " + std::to_string(table.header.size()) + " fields, got "
                                 + std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
    }
    if (table.header.empty())
    {
        throw ParseError(source, line_no, "empty CSV file (no header)");
    }
    return table;
}

void write_csv(CsvTable const& table, std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    auto write_row = [&out](std::vector<std::string> const& row) {
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            out << (i ? "," : "") << row[i];
        }
        out << '\n';
    };
    write_row(table.header);
    for (auto const& row : table.rows)
    {
        write_row(row);
    }
    if (!out.flush())
    {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::string format_number(double value)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

double parse_number(std::string const& text, std::string const& source, std::size_t line)
{
    double v = 0;
    char const* first = text.data();
    char const* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(v))
    {
        throw ParseError(source, line, "invalid number '" + text + "'");
    }
    return v;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
