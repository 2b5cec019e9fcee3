//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/tables.cpp
//---------------------------------------------------------------------------//
#include "xtrace/io/tables.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xtrace/error.hpp"
#include "xtrace/io/csv.hpp"

namespace xtrace
{
namespace
{
// Whitespace tokens of a line after removing a '#' comment.
std::vector<std::string> tokenize(std::string line)
{
    if (auto const hash = line.find('#'); hash != std::string::npos)
    {
        line.erase(hash);
    }
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
    {
        tokens.push_back(tok);
    }
    return tokens;
}

template<class F>
void for_each_line(std::string const& text, F&& f)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        auto tokens = tokenize(line);
        if (!tokens.empty())
        {
            f(line_no, tokens);
        }
    }
}

int parse_index(std::string const& tok, std::string const& source, std::size_t line, char name)
{
    int v = 0;
    char const* first = tok.data();
    char const* last = first + tok.size();
    if (first != last && *first == '+')
    {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || first == last)
    {
        throw ParseError(source, line, std::string("Miller index ") + name
                                           + " must be an integer, got '" + tok + "'");
    }
    return v;
}

std::string format_miller(Miller const& m)
{
    return "(" + std::to_string(m.h) + "," + std::to_string(m.k) + "," + std::to_string(m.l) + ")";
}
}  // namespace

//---------------------------------------------------------------------------//
std::string read_text_file(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
    {
        throw IoError("failed reading '" + path.string() + "'");
    }
    return ss.str();
}

//---------------------------------------------------------------------------//
StructureFactorTable
parse_hkl(std::string const& text, std::string const& source, LoadWarnings* warnings)
{
    StructureFactorTable table;
    std::unordered_map<Miller, std::size_t, MillerHash> first_seen;
    for_each_line(text, [&](std::size_t line, std::vector<std::string> const& tok) {
        if (tok.size() != 4)
        {
            throw ParseError(source, line, "expected 'h k l F', got "
                                               + std::to_string(tok.size()) + " fields");
        }
        Miller const hkl{parse_index(tok[0], source, line, 'h'),
                         parse_index(tok[1], source, line, 'k'),
                         parse_index(tok[2], source, line, 'l')};
        double const f = parse_number(tok[3], source, line);
        if (f < 0)
        {
            throw ParseError(source, line, "structure factor must be >= 0, got " + tok[3]);
        }
        auto [it, inserted] = first_seen.emplace(hkl, line);
        if (!inserted)
        {
            std::string const msg = source + ":" + std::to_string(line) + ": duplicate reflection "
                                    + format_miller(hkl) + " (first on line "
                                    + std::to_string(it->second) + "); keeping the last value";
            if (warnings)
            {
                warnings->messages.push_back(msg);
            }
            else
            {
                std::clog << "warning: " << msg << '\n';
            }
        }
        table.entries[hkl] = f;
    });
    return table;
}

StructureFactorTable load_hkl(std::filesystem::path const& path, LoadWarnings* warnings)
{
    return parse_hkl(read_text_file(path), path.string(), warnings);
}

void write_hkl(StructureFactorTable const& table, std::filesystem::path const& path)
{
    std::vector<std::pair<Miller, double>> sorted(table.entries.begin(), table.entries.end());
    std::sort(sorted.begin(), sorted.end(), [](auto const& a, auto const& b) {
        return std::tie(a.first.h, a.first.k, a.first.l) < std::tie(b.first.h, b.first.k, b.first.l);
    });
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << "# h k l F\n";
    for (auto const& [hkl, f] : sorted)
    {
        out << hkl.h << ' ' << hkl.k << ' ' << hkl.l << ' ' << format_number(f) << '\n';
    }
    if (!out.flush())
    {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

//---------------------------------------------------------------------------//
BackgroundProfile parse_background(std::string const& text, std::string const& source)
{
    BackgroundProfile profile;
    std::size_t prev_line = 0;
    std::size_t last_line = 0;
    for_each_line(text, [&](std::size_t line, std::vector<std::string> const& tok) {
        last_line = line;
        if (tok.size() != 2)
        {
            throw ParseError(source, line, "expected 'stol f_bg', got "
                                               + std::to_string(tok.size()) + " fields");
        }
        double const stol = parse_number(tok[0], source, line);
        double const f_bg = parse_number(tok[1], source, line);
        if (stol < 0)
        {
            throw ParseError(source, line, "stol must be >= 0, got " + tok[0]);
        }
        if (f_bg < 0)
        {
            throw ParseError(source, line, "background amplitude must be >= 0, got " + tok[1]);
        }
        if (!profile.points.empty() && !(stol > profile.points.back().stol))
        {
            throw ParseError(source,
                             line,
                             "stol " + tok[0] + " on line " + std::to_string(line)
                                 + " is not greater than stol "
                                 + format_number(profile.points.back().stol) + " on line "
                                 + std::to_string(prev_line));
        }
        profile.points.push_back({stol, f_bg});
        prev_line = line;
    });
    if (profile.points.size() < 2)
    {
        throw ParseError(source,
                         last_line,
                         "background profile needs at least 2 points, got "
                             + std::to_string(profile.points.size()));
    }
    return profile;
}

BackgroundProfile load_background(std::filesystem::path const& path)
{
    return parse_background(read_text_file(path), path.string());
}

void write_background(BackgroundProfile const& profile, std::filesystem::path const& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << "# stol f_bg\n";
    for (auto const& p : profile.points)
    {
        out << format_number(p.stol) << ' ' << format_number(p.f_bg) << '\n';
    }
    if (!out.flush())
    {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
