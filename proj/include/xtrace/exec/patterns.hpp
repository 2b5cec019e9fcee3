//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/exec/patterns.hpp
//! The three execution patterns plus a wall-clock kernel timer.
//!
//! Bodies receive only an index. Anything else they need must be captured
//! by value as plain data (spans, scalars, const references to immutable
//! contexts); never capture `this` of an object that owns the output.
//!
//! Reductions and scans use a combination tree fixed by the range length
//! alone: the range is cut into leaves of \c reduce_leaf_size iterations,
//! each leaf is folded left-to-right from the identity, and leaf results are
//! combined by recursive halving. Results therefore never depend on the
//! executor or on scheduling.
//---------------------------------------------------------------------------//
#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "executor.hpp"
#include "xtrace/error.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
inline constexpr std::size_t reduce_leaf_size = 256;

namespace detail
{
//---------------------------------------------------------------------------//
//! Keeps the lowest failing index seen by any worker.
class FailureSlot
{
  public:
    void record(std::size_t index, std::exception_ptr error)
    {
        std::lock_guard lock(mutex_);
        if (!error_ || index < index_)
        {
            index_ = index;
            error_ = std::move(error);
        }
        failed_.store(true, std::memory_order_relaxed);
    }

    std::atomic<bool> const& flag() const { return failed_; }
    bool failed() const { return failed_.load(std::memory_order_relaxed); }

    [[noreturn]] void rethrow(std::string_view label) const
    {
        std::string what = "unknown error";
        try
        {
            std::rethrow_exception(error_);
        }
        catch (std::exception const& e)
        {
            what = e.what();
        }
        catch (...)
        {
        }
        throw PatternError(std::string(label), index_, what, error_);
    }

  private:
    std::mutex mutex_;
    std::size_t index_ = std::numeric_limits<std::size_t>::max();
    std::exception_ptr error_;
    std::atomic<bool> failed_{false};
};

template<class T, class Combine>
T combine_tree(std::vector<T> const& leaves, std::size_t lo, std::size_t hi, Combine const& combine)
{
    if (hi - lo == 1)
    {
        return leaves[lo];
    }
    std::size_t const mid = lo + (hi - lo) / 2;
    return combine(combine_tree(leaves, lo, mid, combine), combine_tree(leaves, mid, hi, combine));
}

inline std::size_t leaf_count(std::size_t n)
{
    return (n + reduce_leaf_size - 1) / reduce_leaf_size;
}

//! Run leaf(j) for each of n_leaves leaves, grouped so each task covers
//! roughly `grain` iterations.
template<class Leaf>
void for_each_leaf(Executor const& exec,
                   std::string_view label,
                   std::size_t n_leaves,
                   std::size_t grain,
                   Leaf&& leaf)
{
    std::size_t const per_task = std::max<std::size_t>(1, grain / reduce_leaf_size);
    std::size_t const n_tasks = (n_leaves + per_task - 1) / per_task;
    FailureSlot failure;
    dispatch(
        exec,
        n_tasks,
        [&](std::size_t task) {
            std::size_t const first = task * per_task;
            std::size_t const last = std::min(n_leaves, first + per_task);
            for (std::size_t j = first; j < last && !failure.failed(); ++j)
            {
                leaf(j, failure);
            }
        },
        failure.flag());
    if (failure.failed())
    {
        failure.rethrow(label);
    }
}
}  // namespace detail

//---------------------------------------------------------------------------//
/*!
 * Invoke body(i) exactly once for each i in the policy range.
 *
 * No ordering is guaranteed. If any invocation throws, no new chunks are
 * started and a PatternError naming the lowest failing index observed is
 * thrown once all running chunks finish.
 */
template<class Body>
void parallel_for(Executor const& exec, std::string_view label, RangePolicy const& policy, Body&& body)
{
    std::size_t const n = policy.size();
    if (n == 0)
    {
        return;
    }
    std::size_t const grain = policy.grain_for(exec);
    std::size_t const n_chunks = (n + grain - 1) / grain;
    detail::FailureSlot failure;
    detail::dispatch(
        exec,
        n_chunks,
        [&](std::size_t chunk) {
            std::size_t const first = policy.start + chunk * grain;
            std::size_t const last = std::min(policy.end, first + grain);
            for (std::size_t i = first; i < last; ++i)
            {
                try
                {
                    body(i);
                }
                catch (...)
                {
                    failure.record(i, std::current_exception());
                    return;
                }
            }
        },
        failure.flag());
    if (failure.failed())
    {
        failure.rethrow(label);
    }
}

//---------------------------------------------------------------------------//
/*!
 * Fold map(i) over the range with the fixed combination tree.
 *
 * \c combine must be associative with \c identity as its neutral element.
 */
template<class T, class Map, class Combine>
T parallel_reduce(Executor const& exec,
                  std::string_view label,
                  RangePolicy const& policy,
                  Map&& map,
                  Combine&& combine,
                  T identity)
{
    std::size_t const n = policy.size();
    if (n == 0)
    {
        return identity;
    }
    std::size_t const n_leaves = detail::leaf_count(n);
    std::vector<T> leaves(n_leaves, identity);
    detail::for_each_leaf(
        exec, label, n_leaves, policy.grain_for(exec), [&](std::size_t j, detail::FailureSlot& failure) {
            std::size_t const first = policy.start + j * reduce_leaf_size;
            std::size_t const last = std::min(policy.end, first + reduce_leaf_size);
            T acc = identity;
            for (std::size_t i = first; i < last; ++i)
            {
                try
                {
                    acc = combine(acc, map(i));
                }
                catch (...)
                {
                    failure.record(i, std::current_exception());
                    return;
                }
            }
            leaves[j] = std::move(acc);
        });
    return detail::combine_tree(leaves, 0, n_leaves, combine);
}

//---------------------------------------------------------------------------//
/*!
 * Inclusive prefix fold: result[i - start] = fold of map over [start, i].
 *
 * Leaf totals are computed in parallel, their running offsets sequentially,
 * then each leaf is rescanned from its offset. \c map is evaluated twice
 * per index and must be pure.
 */
template<class T, class Map, class Combine>
std::vector<T> parallel_scan(Executor const& exec,
                             std::string_view label,
                             RangePolicy const& policy,
                             Map&& map,
                             Combine&& combine,
                             T identity = T{})
{
    std::size_t const n = policy.size();
    std::vector<T> result(n, identity);
    if (n == 0)
    {
        return result;
    }
    std::size_t const n_leaves = detail::leaf_count(n);
    std::size_t const grain = policy.grain_for(exec);

    std::vector<T> totals(n_leaves, identity);
    auto leaf_bounds = [&](std::size_t j) {
        std::size_t const first = policy.start + j * reduce_leaf_size;
        return std::pair{first, std::min(policy.end, first + reduce_leaf_size)};
    };
    detail::for_each_leaf(exec, label, n_leaves, grain, [&](std::size_t j, detail::FailureSlot& failure) {
        auto const [first, last] = leaf_bounds(j);
        T acc = identity;
        for (std::size_t i = first; i < last; ++i)
        {
            try
            {
                acc = combine(acc, map(i));
            }
            catch (...)
            {
                failure.record(i, std::current_exception());
                return;
            }
        }
        totals[j] = std::move(acc);
    });

    std::vector<T> offsets(n_leaves, identity);
    for (std::size_t j = 1; j < n_leaves; ++j)
    {
        offsets[j] = combine(offsets[j - 1], totals[j - 1]);
    }

    detail::for_each_leaf(exec, label, n_leaves, grain, [&](std::size_t j, detail::FailureSlot& failure) {
        auto const [first, last] = leaf_bounds(j);
        T acc = offsets[j];
        for (std::size_t i = first; i < last; ++i)
        {
            try
            {
                acc = combine(acc, map(i));
            }
            catch (...)
            {
                failure.record(i, std::current_exception());
                return;
            }
            result[i - policy.start] = acc;
        }
    });
    return result;
}

//---------------------------------------------------------------------------//
//! Wall time of action() in ms (steady clock), appended to the executor log.
template<class Action>
double kernel_timer(Executor& exec, std::string label, Action&& action)
{
    auto const start = std::chrono::steady_clock::now();
    action();
    auto const stop = std::chrono::steady_clock::now();
    double const ms = std::chrono::duration<double, std::milli>(stop - start).count();
    exec.record_timing(std::move(label), ms);
    return ms;
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
