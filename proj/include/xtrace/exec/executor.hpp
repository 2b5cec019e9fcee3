//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/exec/executor.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace xtrace
{
//---------------------------------------------------------------------------//
enum class ExecutorKind
{
    serial,
    workers,
};

struct TimingRecord
{
    std::string label;
    double ms = 0;
};

//---------------------------------------------------------------------------//
/*!
 * Where pattern bodies run: inline on the calling thread, or on a fixed
 * number of host threads.
 *
 * An executor also owns a timing log filled by \c kernel_timer. The log is
 * only touched between pattern invocations, so an executor must not be
 * shared by concurrently running callers; copy it instead.
 */
class Executor
{
  public:
    //! Single-threaded execution on the caller's thread.
    static Executor serial();
    //! \c n host threads (including the caller); throws for n == 0.
    static Executor workers(std::size_t n);

    //! Serial executor; exists so containers can default-construct.
    Executor();

    ExecutorKind kind() const { return kind_; }
    //! Number of threads bodies may run on (1 for serial).
    std::size_t concurrency() const { return workers_; }
    std::string const& name() const { return name_; }

    std::vector<TimingRecord> const& timing_log() const { return log_; }
    void record_timing(std::string label, double ms);
    void clear_timing_log() { log_.clear(); }

  private:
    Executor(ExecutorKind kind, std::size_t workers, std::string name);

    ExecutorKind kind_;
    std::size_t workers_;
    std::string name_;
    std::vector<TimingRecord> log_;
};

//! Worker count from XTRACE_WORKERS, else the hardware thread count.
std::size_t default_worker_count();

//---------------------------------------------------------------------------//
//! Iteration range [start, end) and the minimum chunk handed to a worker.
struct RangePolicy
{
    std::size_t start = 0;
    std::size_t end = 0;
    std::size_t grain = 0;  //!< 0 selects ceil(length / (4 * workers))

    RangePolicy() = default;
    RangePolicy(std::size_t begin, std::size_t finish, std::size_t grain_size = 0);

    std::size_t size() const { return end - start; }
    //! Effective grain for the given executor (always >= 1).
    std::size_t grain_for(Executor const& exec) const;
};

namespace detail
{
//---------------------------------------------------------------------------//
/*!
 * Run task(i) for every i in [0, n_tasks) on the executor's threads.
 *
 * Tasks are claimed dynamically; the call returns after all claimed tasks
 * have finished. Once \c stop reads true, no further tasks are claimed.
 */
void dispatch(Executor const& exec,
              std::size_t n_tasks,
              std::function<void(std::size_t)> const& task,
              std::atomic<bool> const& stop);
}  // namespace detail

//---------------------------------------------------------------------------//
}  // namespace xtrace
