//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/toml_lite.cpp
//---------------------------------------------------------------------------//
#include "toml_lite.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "xtrace/error.hpp"

namespace xtrace::toml_lite
{
namespace
{
bool is_bare_key_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

std::string trim(std::string const& s)
{
    auto const first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
    {
        return {};
    }
    auto const last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Drop a trailing comment, respecting string literals.
std::string strip_comment(std::string const& line)
{
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i)
    {
        char const c = line[i];
        if (in_string && c == '\\')
        {
            ++i;
        }
        else if (c == '"')
        {
            in_string = !in_string;
        }
        else if (c == '#' && !in_string)
        {
            return line.substr(0, i);
        }
    }
    return line;
}

// Bracket depth change over a fragment, ignoring string contents.
int bracket_balance(std::string const& s)
{
    int depth = 0;
    bool in_string = false;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        char const c = s[i];
        if (in_string && c == '\\')
        {
            ++i;
        }
        else if (c == '"')
        {
            in_string = !in_string;
        }
        else if (!in_string && c == '[')
        {
            ++depth;
        }
        else if (!in_string && c == ']')
        {
            --depth;
        }
    }
    return depth;
}

class ValueParser
{
  public:
    ValueParser(std::string const& text, std::string const& source, std::size_t line)
        : text_(text), source_(source), line_(line)
    {
    }

    Value parse_all()
    {
        Value v = parse_value();
        skip_space();
        if (pos_ != text_.size())
        {
            fail("unexpected trailing characters '" + text_.substr(pos_) + "'");
        }
        return v;
    }

  private:
    [[noreturn]] void fail(std::string const& what) const
    {
        throw ParseError(source_, line_, what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
        {
            ++pos_;
        }
    }

    Value parse_value()
    {
        skip_space();
        if (pos_ >= text_.size())
        {
            fail("missing value");
        }
        char const c = text_[pos_];
        if (c == '[')
        {
            return parse_array();
        }
        if (c == '"')
        {
            return {parse_string()};
        }
        if (c == '{')
        {
            fail("inline tables are not supported");
        }
        return parse_scalar();
    }

    Value parse_array()
    {
        ++pos_;  // '['
        Array items;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == ']')
        {
            ++pos_;
            return {std::move(items)};
        }
        while (true)
        {
            items.push_back(parse_value());
            skip_space();
            if (pos_ >= text_.size())
            {
                fail("unterminated array");
            }
            if (text_[pos_] == ',')
            {
                ++pos_;
                skip_space();
                if (pos_ < text_.size() && text_[pos_] == ']')
                {
                    ++pos_;
                    break;
                }
                continue;
            }
            if (text_[pos_] == ']')
            {
                ++pos_;
                break;
            }
            fail("expected ',' or ']' in array");
        }
        return {std::move(items)};
    }

    std::string parse_string()
    {
        ++pos_;  // opening quote
        std::string out;
        while (pos_ < text_.size())
        {
            char const c = text_[pos_++];
            if (c == '"')
            {
                return out;
            }
            if (c == '\\')
            {
                if (pos_ >= text_.size())
                {
                    break;
                }
                char const e = text_[pos_++];
                switch (e)
                {
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    default: fail(std::string("unsupported escape '\\") + e + "'");
                }
                continue;
            }
            out += c;
        }
        fail("unterminated string");
    }

    Value parse_scalar()
    {
        std::size_t const start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']'
               && !std::isspace(static_cast<unsigned char>(text_[pos_])))
        {
            ++pos_;
        }
        std::string const token = text_.substr(start, pos_ - start);
        if (token == "true")
        {
            return {true};
        }
        if (token == "false")
        {
            return {false};
        }
        char const* first = token.data();
        char const* last = first + token.size();
        if (!token.empty() && token.front() == '+')
        {
            ++first;
        }
        if (token.find_first_of(".eE") == std::string::npos)
        {
            std::int64_t iv = 0;
            auto [ptr, ec] = std::from_chars(first, last, iv);
            if (ec == std::errc{} && ptr == last && first != last)
            {
                return {iv};
            }
        }
        double dv = 0;
        auto [ptr, ec] = std::from_chars(first, last, dv);
        if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(dv))
        {
            fail("invalid value '" + token + "'");
        }
        return {dv};
    }

    std::string const& text_;
    std::string const& source_;
    std::size_t line_;
    std::size_t pos_ = 0;
};
}  // namespace

//---------------------------------------------------------------------------//
Document parse(std::string const& text, std::string const& source)
{
    Document doc;
    std::string section;
    doc[section];

    std::size_t line_no = 0;
    std::size_t pos = 0;
    auto next_line = [&](std::string& out) {
        if (pos >= text.size())
        {
            return false;
        }
        auto const nl = text.find('\n', pos);
        out = text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos);
        pos = nl == std::string::npos ? text.size() : nl + 1;
        ++line_no;
        return true;
    };

    std::string raw;
    while (next_line(raw))
    {
        std::string const line = trim(strip_comment(raw));
        if (line.empty())
        {
            continue;
        }
        std::size_t const start_line = line_no;
        if (line.front() == '[')
        {
            if (line.back() != ']' || line.size() < 3)
            {
                throw ParseError(source, line_no, "malformed section header '" + line + "'");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty()
                || !std::all_of(section.begin(), section.end(), is_bare_key_char))
            {
                throw ParseError(source, line_no, "invalid section name '" + section + "'");
            }
            if (doc.count(section) && section != "")
            {
                throw ParseError(source, line_no, "duplicate section [" + section + "]");
            }
            doc[section];
            continue;
        }

        auto const eq = line.find('=');
        if (eq == std::string::npos)
        {
            throw ParseError(source, line_no, "expected 'key = value', got '" + line + "'");
        }
        std::string const key = trim(line.substr(0, eq));
        if (key.empty() || !std::all_of(key.begin(), key.end(), is_bare_key_char))
        {
            throw ParseError(source, line_no, "invalid key '" + key + "'");
        }
        std::string value_text = trim(line.substr(eq + 1));
        int depth = bracket_balance(value_text);
        while (depth > 0)
        {
            if (!next_line(raw))
            {
                throw ParseError(source, start_line, "unterminated array for key '" + key + "'");
            }
            std::string const more = trim(strip_comment(raw));
            depth += bracket_balance(more);
            value_text += ' ';
            value_text += more;
        }
        Value value = ValueParser(value_text, source, start_line).parse_all();
        auto& table = doc[section];
        if (table.count(key))
        {
            throw ParseError(source, start_line, "duplicate key '" + key + "'");
        }
        table.emplace(key, Entry{std::move(value), start_line});
    }
    return doc;
}

char const* type_name(Value const& v)
{
    switch (v.data.index())
    {
        case 0: return "boolean";
        case 1: return "integer";
        case 2: return "float";
        case 3: return "string";
        default: return "array";
    }
}

//---------------------------------------------------------------------------//
}  // namespace xtrace::toml_lite
