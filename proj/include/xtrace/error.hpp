//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/error.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <exception>
#include <stdexcept>
#include <string>

namespace xtrace
{
//---------------------------------------------------------------------------//
//! Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

//! Unit cell whose metric determinant is not strictly positive.
class InvalidCell : public Error
{
  public:
    using Error::Error;
};

class OutOfBounds : public Error
{
  public:
    using Error::Error;
};

class InvalidGeometry : public Error
{
  public:
    using Error::Error;
};

//! Buffer dimensions disagree with the panel or with each other.
class ShapeError : public Error
{
  public:
    using Error::Error;
};

//! A kernel produced a non-finite pixel.
class NumericalFault : public Error
{
  public:
    NumericalFault(std::string const& kernel, std::size_t pixel)
        : Error(kernel + ": non-finite value at pixel " + std::to_string(pixel))
        , pixel_(pixel)
    {
    }

    std::size_t pixel() const noexcept { return pixel_; }

  private:
    std::size_t pixel_;
};

//! Text file could not be parsed; message carries the path and line.
class ParseError : public Error
{
  public:
    ParseError(std::string const& where, std::size_t line, std::string const& what)
        : Error(where + ":" + std::to_string(line) + ": " + what), line_(line)
    {
    }

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

//! Configuration value missing, unknown, or out of its valid range.
class ConfigError : public Error
{
  public:
    ConfigError(std::string key, std::string const& what)
        : Error("config key '" + key + "': " + what), key_(std::move(key))
    {
    }

    std::string const& key() const noexcept { return key_; }

  private:
    std::string key_;
};

class IoError : public Error
{
  public:
    using Error::Error;
};

//! Stored checksum disagrees with the payload.
class ChecksumError : public Error
{
  public:
    using Error::Error;
};

//! A pattern body threw; carries the failing index and the original error.
class PatternError : public Error
{
  public:
    PatternError(std::string const& label,
                 std::size_t index,
                 std::string const& what,
                 std::exception_ptr cause)
        : Error(label + ": iteration " + std::to_string(index) + " failed: " + what)
        , index_(index)
        , cause_(std::move(cause))
    {
    }

    std::size_t index() const noexcept { return index_; }
    std::exception_ptr const& cause() const noexcept { return cause_; }

  private:
    std::size_t index_;
    std::exception_ptr cause_;
};

//---------------------------------------------------------------------------//
}  // namespace xtrace
