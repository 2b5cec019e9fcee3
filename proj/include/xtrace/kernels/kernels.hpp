//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/kernels/kernels.hpp
//! Per-pixel kernels: Bragg spots, amorphous background, and the 32->64 bit
//! accumulation. Each kernel body reads an immutable context and writes a
//! single output pixel.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <memory>
#include <vector>

#include "pixel_buffer.hpp"
#include "xtrace/core/model.hpp"
#include "xtrace/exec/executor.hpp"

namespace xtrace
{
//---------------------------------------------------------------------------//
//! Classical electron radius squared [m^2].
inline constexpr double r_e_sqr = 7.94079248e-30;

//! Kernel labels used by the timer and reports.
inline constexpr char const* spots_label = "nanobragg_spots";
inline constexpr char const* background_label = "add_background";
inline constexpr char const* add_array_label = "add_array";

//---------------------------------------------------------------------------//
/*!
 * Everything the spots kernel reads, flattened to plain values.
 *
 * The per-domain lattice bases are pre-rotated; the structure-factor table
 * is shared read-only. Nothing here refers back to an owning object.
 */
struct SpotsContext
{
    std::vector<Mat3> bases;  //!< Rotated real-space basis per mosaic domain
    std::array<int, 3> n_cells{1, 1, 1};
    std::shared_ptr<StructureFactorTable const> sf_table;
    DetectorPanel panel;
    BeamSpectrum spectrum;
    int oversample = 1;
    double r_e_sqr = xtrace::r_e_sqr;
};

struct BackgroundContext
{
    BackgroundProfile profile;
    DetectorPanel panel;
    BeamSpectrum spectrum;
    double thickness_factor = 1;
    double r_e_sqr = xtrace::r_e_sqr;
};

//! Validate inputs and flatten them into a spots context.
SpotsContext make_spots_context(CrystalModel const& crystal,
                                DetectorPanel const& panel,
                                BeamSpectrum const& spectrum,
                                int oversample);

BackgroundContext make_background_context(BackgroundProfile const& profile,
                                          DetectorPanel const& panel,
                                          BeamSpectrum const& spectrum,
                                          double thickness_factor);

//---------------------------------------------------------------------------//
//! sin(n x) / sin(x), with the limit n cos(n x) / cos(x) where |sin x| < 1e-12.
double sincg(double x, int n);

//! Grating shape transform of an Na x Nb x Nc block.
double lattice_transform(std::array<int, 3> const& n_cells, double h, double k, double l);
double lattice_transform(CrystalModel const& crystal, double h, double k, double l);

//---------------------------------------------------------------------------//
// KERNELS
//---------------------------------------------------------------------------//
//! Bragg spot intensity [photons] for every pixel of \c out.
void nanobragg_spots(Executor const& exec, SpotsContext const& ctx, StageImage& out);

//! Background intensity [photons] for every pixel of \c out.
void add_background(Executor const& exec, BackgroundContext const& ctx, StageImage& out);

void add_background(Executor const& exec,
                    BackgroundProfile const& profile,
                    DetectorPanel const& panel,
                    BeamSpectrum const& spectrum,
                    double thickness_factor,
                    StageImage& out);

//! lhs[j] += double(rhs[j]).
void add_array(Executor const& exec, AccumImage& lhs, StageImage const& rhs);

//---------------------------------------------------------------------------//
}  // namespace xtrace
