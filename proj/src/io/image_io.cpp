//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file io/image_io.cpp
//---------------------------------------------------------------------------//
#include "xtrace/io/image_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <zlib.h>

#include "xtrace/error.hpp"
#include "xtrace/io/tables.hpp"

namespace xtrace
{
namespace
{
std::filesystem::path with_suffix(std::filesystem::path const& stem, char const* suffix)
{
    std::filesystem::path p = stem;
    p += suffix;
    return p;
}

void write_bytes(std::filesystem::path const& path, std::span<std::byte const> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(reinterpret_cast<char const*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out.flush())
    {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

std::vector<std::byte> read_bytes(std::filesystem::path const& path)
{
    std::string const text = read_text_file(path);
    std::vector<std::byte> bytes(text.size());
    std::transform(text.begin(), text.end(), bytes.begin(), [](char c) {
        return static_cast<std::byte>(c);
    });
    return bytes;
}

template<class T>
T sidecar_get(nlohmann::json const& j, char const* key, std::string const& source)
{
    if (!j.contains(key))
    {
        throw ParseError(source, 0, std::string("sidecar key '") + key + "' is missing");
    }
    try
    {
        return j.at(key).get<T>();
    }
    catch (nlohmann::json::exception const&)
    {
        throw ParseError(source, 0, std::string("sidecar key '") + key + "' has the wrong type");
    }
}
}  // namespace

//---------------------------------------------------------------------------//
std::uint32_t crc32(std::span<std::byte const> bytes)
{
    uLong crc = ::crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large buffers in pieces.
    constexpr std::size_t piece = 1u << 30;
    for (std::size_t off = 0; off < bytes.size(); off += piece)
    {
        std::size_t const n = std::min(piece, bytes.size() - off);
        crc = ::crc32(crc, reinterpret_cast<Bytef const*>(bytes.data() + off), static_cast<uInt>(n));
    }
    return static_cast<std::uint32_t>(crc);
}

std::vector<std::byte> encode_f32le(AccumImage const& buf)
{
    std::vector<std::byte> bytes(4 * buf.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
    {
        auto const bits = std::bit_cast<std::uint32_t>(static_cast<float>(buf[i]));
        for (int b = 0; b < 4; ++b)
        {
            bytes[4 * i + b] = static_cast<std::byte>((bits >> (8 * b)) & 0xFFu);
        }
    }
    return bytes;
}

nlohmann::json sidecar_json(ImageMetadata const& meta)
{
    nlohmann::json wavelengths = nlohmann::json::array();
    nlohmann::json weights = nlohmann::json::array();
    for (auto const& s : meta.spectrum)
    {
        wavelengths.push_back(s.wavelength);
        weights.push_back(s.weight);
    }
    return {
        {"format", image_format_tag},
        {"dtype", "float32"},
        {"byte_order", "little"},
        {"layout", "row-major, slow index outermost"},
        {"downcast", "float64 accumulator rounded to nearest-even float32"},
        {"dims", {meta.slow, meta.fast}},
        {"pixel_size_m", meta.pixel_size},
        {"distance_m", meta.distance},
        {"wavelengths_A", wavelengths},
        {"weights", weights},
        {"seed", meta.seed},
        {"image_index", meta.image_index},
        {"image_seed", meta.seed + meta.image_index},
        {"payload_bytes", 4 * meta.slow * meta.fast},
        {"crc32", meta.crc32},
        {"config", meta.config},
    };
}

ImageMetadata sidecar_from_json(nlohmann::json const& j, std::string const& source)
{
    if (!j.is_object())
    {
        throw ParseError(source, 0, "sidecar is not a JSON object");
    }
    if (sidecar_get<std::string>(j, "format", source) != image_format_tag)
    {
        throw ParseError(source, 0, "sidecar key 'format' is not " + std::string(image_format_tag));
    }
    if (sidecar_get<std::string>(j, "dtype", source) != "float32")
    {
        throw ParseError(source, 0, "sidecar key 'dtype' must be float32");
    }
    ImageMetadata meta;
    auto const dims = sidecar_get<std::vector<std::int64_t>>(j, "dims", source);
    if (dims.size() != 2 || dims[0] < 1 || dims[1] < 1)
    {
        throw ParseError(source, 0, "sidecar key 'dims' must hold two positive integers");
    }
    meta.slow = static_cast<std::size_t>(dims[0]);
    meta.fast = static_cast<std::size_t>(dims[1]);
    meta.pixel_size = sidecar_get<double>(j, "pixel_size_m", source);
    meta.distance = sidecar_get<double>(j, "distance_m", source);
    auto const wavelengths = sidecar_get<std::vector<double>>(j, "wavelengths_A", source);
    auto const weights = sidecar_get<std::vector<double>>(j, "weights", source);
    if (wavelengths.size() != weights.size())
    {
        throw ParseError(source, 0, "sidecar keys 'wavelengths_A' and 'weights' differ in length");
    }
    for (std::size_t i = 0; i < wavelengths.size(); ++i)
    {
        meta.spectrum.push_back({wavelengths[i], weights[i]});
    }
    meta.seed = sidecar_get<std::uint64_t>(j, "seed", source);
    meta.image_index = sidecar_get<std::uint64_t>(j, "image_index", source);
    std::uint64_t const crc = sidecar_get<std::uint64_t>(j, "crc32", source);
    if (crc > 0xFFFFFFFFull)
    {
        throw ParseError(source, 0, "sidecar key 'crc32' exceeds 32 bits");
    }
    meta.crc32 = static_cast<std::uint32_t>(crc);
    if (j.contains("config"))
    {
        meta.config = sidecar_get<std::string>(j, "config", source);
    }
    return meta;
}

//---------------------------------------------------------------------------//
ImageMetadata write_image(AccumImage const& buf, std::filesystem::path const& stem, ImageMetadata meta)
{
    if (buf.slow() != meta.slow || buf.fast() != meta.fast)
    {
        throw ShapeError("image is " + std::to_string(buf.slow()) + "x" + std::to_string(buf.fast())
                         + " but metadata says " + std::to_string(meta.slow) + "x"
                         + std::to_string(meta.fast));
    }
    for (std::size_t i = 0; i < buf.size(); ++i)
    {
        if (!std::isfinite(buf[i]) || !std::isfinite(static_cast<float>(buf[i])))
        {
            throw NumericalFault("write_image", i);
        }
    }
    std::vector<std::byte> const payload = encode_f32le(buf);
    meta.crc32 = crc32(payload);
    write_bytes(with_suffix(stem, ".bin"), payload);

    std::string const text = sidecar_json(meta).dump(2) + "\n";
    write_bytes(with_suffix(stem, ".json"),
                std::as_bytes(std::span<char const>(text.data(), text.size())));
    return meta;
}

LoadedImage read_image(std::filesystem::path const& path)
{
    std::filesystem::path stem = path;
    if (stem.extension() == ".bin")
    {
        stem.replace_extension();
    }
    auto const bin_path = with_suffix(stem, ".bin");
    auto const json_path = with_suffix(stem, ".json");
    if (!std::filesystem::exists(json_path))
    {
        throw IoError("missing sidecar '" + json_path.string() + "'");
    }
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(read_text_file(json_path));
    }
    catch (nlohmann::json::parse_error const& e)
    {
        throw ParseError(json_path.string(), 0, std::string("invalid JSON: ") + e.what());
    }
    ImageMetadata meta = sidecar_from_json(j, json_path.string());

    std::vector<std::byte> const payload = read_bytes(bin_path);
    if (payload.size() != 4 * meta.slow * meta.fast)
    {
        throw ParseError(bin_path.string(), 0, "payload is " + std::to_string(payload.size())
                                                   + " bytes, sidecar 'dims' implies "
                                                   + std::to_string(4 * meta.slow * meta.fast));
    }
    std::uint32_t const actual = crc32(payload);
    if (actual != meta.crc32)
    {
        char msg[160];
        std::snprintf(msg, sizeof(msg), "CRC-32 mismatch: sidecar 0x%08x, payload 0x%08x",
                      static_cast<unsigned>(meta.crc32), static_cast<unsigned>(actual));
        throw ChecksumError(bin_path.string() + ": " + msg);
    }

    std::vector<float> values(meta.slow * meta.fast);
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        std::uint32_t bits = 0;
        for (int b = 0; b < 4; ++b)
        {
            bits |= std::to_integer<std::uint32_t>(payload[4 * i + b]) << (8 * b);
        }
        values[i] = std::bit_cast<float>(bits);
    }
    return {StageImage(meta.slow, meta.fast, std::move(values)), std::move(meta)};
}

//---------------------------------------------------------------------------//
template<class T>
double preview_scale(PixelBuffer<T> const& buf)
{
    if (buf.empty())
    {
        throw InvalidArgument("preview of an empty buffer");
    }
    std::vector<double> sorted(buf.data().begin(), buf.data().end());
    std::size_t const rank = static_cast<std::size_t>(0.999 * static_cast<double>(sorted.size() - 1));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(rank), sorted.end());
    return sorted[rank];
}

template<class T>
void write_preview(PixelBuffer<T> const& buf, std::filesystem::path const& path)
{
    double const scale = preview_scale(buf);
    auto const [lo, hi] = std::minmax_element(buf.data().begin(), buf.data().end());
    bool const blank = *lo == *hi || !(scale > 0);

    std::string header = "P5\n" + std::to_string(buf.fast()) + " " + std::to_string(buf.slow()) + "\n255\n";
    std::vector<std::byte> bytes(header.size() + buf.size());
    std::transform(header.begin(), header.end(), bytes.begin(), [](char c) {
        return static_cast<std::byte>(c);
    });
    for (std::size_t i = 0; i < buf.size(); ++i)
    {
        long level = 0;
        if (!blank)
        {
            double const v = std::clamp(static_cast<double>(buf[i]), 0.0, scale);
            level = std::lround(v / scale * 255.0);
        }
        bytes[header.size() + i] = static_cast<std::byte>(level);
    }
    write_bytes(path, bytes);
}

template double preview_scale(PixelBuffer<float> const&);
template double preview_scale(PixelBuffer<double> const&);
template void write_preview(PixelBuffer<float> const&, std::filesystem::path const&);
template void write_preview(PixelBuffer<double> const&, std::filesystem::path const&);

//---------------------------------------------------------------------------//
}  // namespace xtrace
