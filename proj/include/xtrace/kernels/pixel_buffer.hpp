//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/kernels/pixel_buffer.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <concepts>
#include <cstddef>
#include <span>
#include <vector>

#include "xtrace/error.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
/*!
 * Flat detector image, row-major with the slow index outermost.
 *
 * The element type is the declared precision: kernels write 32-bit stages
 * and images accumulate in 64 bits.
 */
template<class T>
    requires std::same_as<T, float> || std::same_as<T, double>
class PixelBuffer
{
  public:
    using value_type = T;
    static constexpr int precision_bits = 8 * sizeof(T);

    PixelBuffer() = default;
    PixelBuffer(std::size_t slow, std::size_t fast, T fill = T{0})
        : slow_(slow), fast_(fast), data_(slow * fast, fill)
    {
    }
    PixelBuffer(std::size_t slow, std::size_t fast, std::vector<T> values)
        : slow_(slow), fast_(fast), data_(std::move(values))
    {
        if (data_.size() != slow * fast)
        {
            throw ShapeError("pixel buffer data length does not match dimensions");
        }
    }

    std::size_t slow() const { return slow_; }
    std::size_t fast() const { return fast_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    std::span<T> data() { return data_; }
    std::span<T const> data() const { return data_; }

    T& operator[](std::size_t i) { return data_[i]; }
    T const& operator[](std::size_t i) const { return data_[i]; }
    T& operator()(std::size_t s, std::size_t f) { return data_[s * fast_ + f]; }
    T const& operator()(std::size_t s, std::size_t f) const { return data_[s * fast_ + f]; }

    template<class U>
    bool same_shape(PixelBuffer<U> const& other) const
    {
        return slow_ == other.slow() && fast_ == other.fast();
    }

    friend bool operator==(PixelBuffer const&, PixelBuffer const&) = default;

  private:
    std::size_t slow_ = 0;
    std::size_t fast_ = 0;
    std::vector<T> data_;
};

using StageImage = PixelBuffer<float>;
using AccumImage = PixelBuffer<double>;

//---------------------------------------------------------------------------//
}  // namespace xtrace
