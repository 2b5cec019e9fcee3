//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/io/image_io.hpp
//! Raw image output: `<stem>.bin` holds float32 little-endian pixels,
//! row-major with the slow index outermost; `<stem>.json` is the sidecar
//! with geometry, spectrum, seed and the CRC-32 of the payload.
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "xtrace/core/model.hpp"
#include "xtrace/kernels/pixel_buffer.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
inline constexpr char const* image_format_tag = "xtrace-raw-f32le/1";

struct ImageMetadata
{
    std::size_t slow = 0;
    std::size_t fast = 0;
    double pixel_size = 0;  //!< [m]
    double distance = 0;  //!< [m]
    std::vector<SpectrumSample> spectrum;
    std::uint64_t seed = 0;  //!< Campaign base seed
    std::uint64_t image_index = 0;
    std::uint32_t crc32 = 0;  //!< Filled in by write_image
    std::string config;  //!< Source config path, if any
};

struct LoadedImage
{
    StageImage pixels;
    ImageMetadata meta;
};

//! CRC-32 (IEEE 802.3, as in zlib/PNG).
std::uint32_t crc32(std::span<std::byte const> bytes);

//! Downcast (round to nearest even) and serialize as float32 LE.
std::vector<std::byte> encode_f32le(AccumImage const& buf);

nlohmann::json sidecar_json(ImageMetadata const& meta);
ImageMetadata sidecar_from_json(nlohmann::json const& j, std::string const& source);

/*!
 * Write `<stem>.bin` and `<stem>.json`; returns the metadata as written.
 *
 * Refuses non-finite buffers (NumericalFault) and shape mismatches with the
 * metadata (ShapeError); IoError when the files cannot be written.
 */
ImageMetadata write_image(AccumImage const& buf, std::filesystem::path const& stem, ImageMetadata meta);

//! Read `<stem>.bin` (a path ending in .bin is also accepted) and verify CRC.
LoadedImage read_image(std::filesystem::path const& path);

//! 8-bit P5 PGM scaled linearly from 0 to the 99.9th percentile.
template<class T>
void write_preview(PixelBuffer<T> const& buf, std::filesystem::path const& path);

//! Value mapped to 255 by write_preview: sorted[floor(0.999 (n - 1))].
template<class T>
double preview_scale(PixelBuffer<T> const& buf);

//---------------------------------------------------------------------------//
}  // namespace xtrace
