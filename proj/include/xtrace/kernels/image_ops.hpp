//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/kernels/image_ops.hpp
//! Whole-image summaries built on the reduce and scan patterns.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <vector>

#include "pixel_buffer.hpp"
#include "xtrace/exec/executor.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
struct ImageStats
{
    double min = 0;
    double max = 0;
    double mean = 0;
    double total = 0;
};

struct Histogram
{
    double lo = 0;
    double hi = 0;
    std::vector<std::uint64_t> counts;
    std::vector<std::uint64_t> cumulative;  //!< Inclusive prefix sum of counts
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
};

//! Exact min/max; total and mean from the fixed-tree reduction.
template<class T>
ImageStats image_stats(Executor const& exec, PixelBuffer<T> const& buf);

/*!
 * Bin b holds values in [lo + b w, lo + (b+1) w) with w = (hi - lo) / n_bins;
 * the last bin also takes values equal to hi.
 */
template<class T>
Histogram
image_histogram(Executor const& exec, PixelBuffer<T> const& buf, std::size_t n_bins, double lo, double hi);

//! Bin index of one value: -1 underflow, n_bins overflow.
std::ptrdiff_t histogram_bin(double value, std::size_t n_bins, double lo, double hi);

//---------------------------------------------------------------------------//
}  // namespace xtrace
