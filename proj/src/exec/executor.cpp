//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file exec/executor.cpp
//---------------------------------------------------------------------------//
#include "xtrace/exec/executor.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

#include "xtrace/error.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
Executor::Executor() : Executor(ExecutorKind::serial, 1, "serial") {}

Executor::Executor(ExecutorKind kind, std::size_t workers, std::string name)
    : kind_(kind), workers_(workers), name_(std::move(name))
{
}

Executor Executor::serial()
{
    return Executor();
}

Executor Executor::workers(std::size_t n)
{
    if (n == 0)
    {
        throw InvalidArgument("worker count must be >= 1");
    }
    return Executor(ExecutorKind::workers, n, "workers(" + std::to_string(n) + ")");
}

void Executor::record_timing(std::string label, double ms)
{
    log_.push_back({std::move(label), ms});
}

std::size_t default_worker_count()
{
    if (char const* env = std::getenv("XTRACE_WORKERS"))
    {
        std::size_t n = 0;
        char const* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec != std::errc{} || ptr != end || n == 0)
        {
            throw InvalidArgument(std::string("XTRACE_WORKERS must be an integer >= 1, got '")
                                  + env + "'");
        }
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

//---------------------------------------------------------------------------//
RangePolicy::RangePolicy(std::size_t begin, std::size_t finish, std::size_t grain_size)
    : start(begin), end(finish), grain(grain_size)
{
    if (finish < begin)
    {
        throw InvalidArgument("range end precedes start");
    }
}

std::size_t RangePolicy::grain_for(Executor const& exec) const
{
    if (grain > 0)
    {
        return grain;
    }
    std::size_t const parts = 4 * exec.concurrency();
    return std::max<std::size_t>(1, (size() + parts - 1) / parts);
}

//---------------------------------------------------------------------------//
namespace detail
{
void dispatch(Executor const& exec,
              std::size_t n_tasks,
              std::function<void(std::size_t)> const& task,
              std::atomic<bool> const& stop)
{
    std::size_t const n_threads = std::min(exec.concurrency(), n_tasks);
    if (exec.kind() == ExecutorKind::serial || n_threads <= 1)
    {
        for (std::size_t i = 0; i < n_tasks && !stop.load(std::memory_order_relaxed); ++i)
        {
            task(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (!stop.load(std::memory_order_relaxed))
        {
            std::size_t const i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n_tasks)
            {
                return;
            }
            task(i);
        }
    };

    std::vector<std::jthread> threads;
    threads.reserve(n_threads - 1);
    for (std::size_t t = 1; t < n_threads; ++t)
    {
        threads.emplace_back(worker);
    }
    worker();
}
}  // namespace detail

//---------------------------------------------------------------------------//
}  // namespace xtrace
