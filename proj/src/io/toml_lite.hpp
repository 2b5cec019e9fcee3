//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/toml_lite.hpp
//! Parser for the flat TOML subset used by simulation configs:
//! `[section]` headers, `key = value` pairs, `#` comments. Values are
//! booleans, integers, floats, basic strings, and (nested) arrays which may
//! span lines. Inline tables, dotted keys and dates are rejected.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace xtrace::toml_lite
{
//---------------------------------------------------------------------------//
struct Value;
using Array = std::vector<Value>;

struct Value
{
    std::variant<bool, std::int64_t, double, std::string, Array> data;
};

struct Entry
{
    Value value;
    std::size_t line = 0;
};

//! Section name -> key -> entry. Keys before any header use section "".
using Document = std::map<std::string, std::map<std::string, Entry>>;

//! Throws ParseError(source, line, ...) on malformed input.
Document parse(std::string const& text, std::string const& source);

//! Short type name for error messages.
char const* type_name(Value const& v);

//---------------------------------------------------------------------------//
}  // namespace xtrace::toml_lite
