//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file kernels/image_ops.cpp
//---------------------------------------------------------------------------//
#include "xtrace/kernels/image_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "xtrace/exec/patterns.hpp"

namespace xtrace
{
namespace
{
struct MinMaxSum
{
    double min = std::numeric_limits<double>::infinity();
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0;
};

// Pixels per histogram block; each block is binned sequentially.
constexpr std::size_t histogram_block = 4096;
}  // namespace

//---------------------------------------------------------------------------//
template<class T>
ImageStats image_stats(Executor const& exec, PixelBuffer<T> const& buf)
{
    if (buf.empty())
    {
        throw InvalidArgument("image_stats of an empty buffer");
    }
    std::span<T const> const values = buf.data();
    MinMaxSum const r = parallel_reduce(
        exec,
        "image_stats",
        RangePolicy(0, values.size()),
        [values](std::size_t i) {
            double const v = values[i];
            return MinMaxSum{v, v, v};
        },
        [](MinMaxSum const& a, MinMaxSum const& b) {
            return MinMaxSum{std::min(a.min, b.min), std::max(a.max, b.max), a.sum + b.sum};
        },
        MinMaxSum{});
    return {r.min, r.max, r.sum / static_cast<double>(values.size()), r.sum};
}

std::ptrdiff_t histogram_bin(double value, std::size_t n_bins, double lo, double hi)
{
    auto const n = static_cast<std::ptrdiff_t>(n_bins);
    if (value < lo)
    {
        return -1;
    }
    if (value > hi)
    {
        return n;
    }
    if (value == hi)
    {
        return n - 1;
    }
    double const width = (hi - lo) / static_cast<double>(n_bins);
    auto b = static_cast<std::ptrdiff_t>(std::floor((value - lo) / width));
    b = std::clamp<std::ptrdiff_t>(b, 0, n - 1);
    // Nudge across edges the division put on the wrong side.
    if (b > 0 && value < lo + static_cast<double>(b) * width)
    {
        --b;
    }
    else if (b + 1 < n && value >= lo + static_cast<double>(b + 1) * width)
    {
        ++b;
    }
    return b;
}

template<class T>
Histogram
image_histogram(Executor const& exec, PixelBuffer<T> const& buf, std::size_t n_bins, double lo, double hi)
{
    if (n_bins == 0)
    {
        throw InvalidArgument("histogram needs at least one bin");
    }
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    {
        throw InvalidArgument("histogram range must satisfy lo < hi");
    }
    std::span<T const> const values = buf.data();
    std::size_t const n_blocks = (values.size() + histogram_block - 1) / histogram_block;

    // counts[0] = underflow, counts[1..n_bins] = bins, counts[n_bins+1] = overflow
    using Counts = std::vector<std::uint64_t>;
    Counts const empty(n_bins + 2, 0);
    Counts const counts = parallel_reduce(
        exec,
        "image_histogram",
        RangePolicy(0, n_blocks, 1),
        [&](std::size_t block) {
            Counts local = empty;
            std::size_t const first = block * histogram_block;
            std::size_t const last = std::min(values.size(), first + histogram_block);
            for (std::size_t i = first; i < last; ++i)
            {
                ++local[static_cast<std::size_t>(histogram_bin(values[i], n_bins, lo, hi) + 1)];
            }
            return local;
        },
        [](Counts a, Counts const& b) {
            if (a.empty())
            {
                return b;
            }
            for (std::size_t i = 0; i < b.size(); ++i)
            {
                a[i] += b[i];
            }
            return a;
        },
        Counts{});

    Histogram result;
    result.lo = lo;
    result.hi = hi;
    Counts const& c = counts.empty() ? empty : counts;
    result.underflow = c.front();
    result.overflow = c.back();
    result.counts.assign(c.begin() + 1, c.end() - 1);
    result.cumulative = parallel_scan(
        exec,
        "image_histogram_cumulative",
        RangePolicy(0, n_bins),
        [&result](std::size_t b) { return result.counts[b]; },
        [](std::uint64_t a, std::uint64_t b) { return a + b; },
        std::uint64_t{0});
    return result;
}

template ImageStats image_stats(Executor const&, PixelBuffer<float> const&);
template ImageStats image_stats(Executor const&, PixelBuffer<double> const&);
template Histogram
image_histogram(Executor const&, PixelBuffer<float> const&, std::size_t, double, double);
template Histogram
image_histogram(Executor const&, PixelBuffer<double> const&, std::size_t, double, double);

//---------------------------------------------------------------------------//
}  // namespace xtrace
