//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/reference/scalar_reference.hpp
//! Brute-force scalar image model used as a test oracle.
//!
//! Deliberately written against plain arrays with no library includes: a
//! straight loop over pixels, sub-pixels, wavelengths and mosaic domains.
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ref
{
using V3 = std::array<double, 3>;
using M3 = std::array<V3, 3>;  // rows

struct Reflection
{
    int h, k, l;
    double f;
};

struct Scene
{
    // cell: edges in A, angles in degrees
    double a, b, c, alpha, beta, gamma;
    int na = 1, nb = 1, nc = 1;
    // full lab rotation of each mosaic domain (mosaic * orientation)
    std::vector<M3> domains;
    std::vector<Reflection> hkl;
    double default_f = 0;

    int slow = 0, fast = 0;
    double pixel = 0, distance = 0;
    double center_slow = 0, center_fast = 0;
    V3 fast_axis{1, 0, 0};
    V3 slow_axis{0, 1, 0};
    V3 beam{0, 0, 1};

    std::vector<double> wavelengths;
    std::vector<double> weights;
    double fluence = 0;
    bool polarization = false;
    int oversample = 1;

    // background; empty means none
    std::vector<double> bg_stol;
    std::vector<double> bg_f;
    double thickness = 1;
};

inline constexpr double electron_radius_sq = 7.94079248e-30;

inline double dot3(V3 const& u, V3 const& v)
{
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline double len3(V3 const& u)
{
    return std::sqrt(dot3(u, u));
}

inline M3 cell_vectors(Scene const& s)
{
    double const d = std::numbers::pi / 180;
    double const ca = std::cos(s.alpha * d), cb = std::cos(s.beta * d);
    double const cg = std::cos(s.gamma * d), sg = std::sin(s.gamma * d);
    double const y = (ca - cb * cg) / sg;
    double const z = std::sqrt(1 - cb * cb - y * y);
    return {V3{s.a, 0, 0}, V3{s.b * cg, s.b * sg, 0}, V3{s.c * cb, s.c * y, s.c * z}};
}

inline V3 rotate(M3 const& r, V3 const& v)
{
    return {dot3(r[0], v), dot3(r[1], v), dot3(r[2], v)};
}

inline double grating(double x, int n)
{
    double const s = std::sin(x);
    if (std::fabs(s) < 1e-12)
        return n * std::cos(n * x) / std::cos(x);
    return std::sin(n * x) / s;
}

inline long nearest(double x)
{
    return x < 0 ? -static_cast<long>(std::floor(-x + 0.5)) : static_cast<long>(std::floor(x + 0.5));
}

inline double amplitude(Scene const& s, double h, double k, double l)
{
    long const ih = nearest(h), ik = nearest(k), il = nearest(l);
    for (auto const& r : s.hkl)
        if (r.h == ih && r.k == ik && r.l == il)
            return r.f;
    return s.default_f;
}

inline double background_amplitude(Scene const& s, double stol)
{
    std::size_t const n = s.bg_stol.size();
    if (stol <= s.bg_stol[0])
        return s.bg_f[0];
    if (stol >= s.bg_stol[n - 1])
        return s.bg_f[n - 1];
    std::size_t i = 1;
    while (s.bg_stol[i] < stol)
        ++i;
    double const t = (stol - s.bg_stol[i - 1]) / (s.bg_stol[i] - s.bg_stol[i - 1]);
    return s.bg_f[i - 1] + t * (s.bg_f[i] - s.bg_f[i - 1]);
}

struct Geometry
{
    double omega, polar;
    V3 dir;
};

inline Geometry point_geometry(Scene const& s, double ys, double xf)
{
    V3 pos;
    for (int i = 0; i < 3; ++i)
    {
        pos[i] = s.distance * s.beam[i] + (ys - s.center_slow) * s.pixel * s.slow_axis[i]
                 + (xf - s.center_fast) * s.pixel * s.fast_axis[i];
    }
    double const r = len3(pos);
    V3 const normal{s.fast_axis[1] * s.slow_axis[2] - s.fast_axis[2] * s.slow_axis[1],
                    s.fast_axis[2] * s.slow_axis[0] - s.fast_axis[0] * s.slow_axis[2],
                    s.fast_axis[0] * s.slow_axis[1] - s.fast_axis[1] * s.slow_axis[0]};
    Geometry g;
    g.omega = s.pixel * s.pixel / (r * r) * std::fabs(dot3(pos, normal)) / r;
    g.dir = {pos[0] / r, pos[1] / r, pos[2] / r};
    double c2t = dot3(g.dir, s.beam);
    c2t = std::fmin(1.0, std::fmax(-1.0, c2t));
    g.polar = s.polarization ? 0.5 * (1 + c2t * c2t) : 1.0;
    return g;
}

//! Spot intensity per pixel, row-major slow outermost.
inline std::vector<double> spots(Scene const& s)
{
    M3 const cell = cell_vectors(s);
    double wsum = 0;
    for (double w : s.weights)
        wsum += w;
    int const os = s.oversample;
    double const pi = std::numbers::pi;
    std::vector<double> out(static_cast<std::size_t>(s.slow * s.fast), 0.0);
    for (int ps = 0; ps < s.slow; ++ps)
    {
        for (int pf = 0; pf < s.fast; ++pf)
        {
            double sum = 0;
            for (int i = 0; i < os; ++i)
            {
                for (int j = 0; j < os; ++j)
                {
                    Geometry const g = point_geometry(s, ps + (i + 0.5) / os, pf + (j + 0.5) / os);
                    for (std::size_t w = 0; w < s.wavelengths.size(); ++w)
                    {
                        V3 q;
                        for (int c = 0; c < 3; ++c)
                            q[c] = (g.dir[c] - s.beam[c]) / s.wavelengths[w];
                        for (M3 const& rot : s.domains)
                        {
                            double const h = dot3(rotate(rot, cell[0]), q);
                            double const k = dot3(rotate(rot, cell[1]), q);
                            double const l = dot3(rotate(rot, cell[2]), q);
                            double const lat = grating(pi * h, s.na) * grating(pi * k, s.nb)
                                               * grating(pi * l, s.nc);
                            double const f = amplitude(s, h, k, l) * lat;
                            sum += g.omega * g.polar * s.weights[w] * f * f;
                        }
                    }
                }
            }
            double const norm = wsum * static_cast<double>(s.domains.size()) * os * os;
            out[static_cast<std::size_t>(ps * s.fast + pf)]
                = electron_radius_sq * s.fluence * sum / norm;
        }
    }
    return out;
}

//! Background intensity per pixel, evaluated at the pixel centre.
inline std::vector<double> background(Scene const& s)
{
    double wsum = 0;
    for (double w : s.weights)
        wsum += w;
    std::vector<double> out(static_cast<std::size_t>(s.slow * s.fast), 0.0);
    if (s.bg_stol.empty())
        return out;
    for (int ps = 0; ps < s.slow; ++ps)
    {
        for (int pf = 0; pf < s.fast; ++pf)
        {
            Geometry const g = point_geometry(s, ps + 0.5, pf + 0.5);
            V3 const d{g.dir[0] - s.beam[0], g.dir[1] - s.beam[1], g.dir[2] - s.beam[2]};
            double sum = 0;
            for (std::size_t w = 0; w < s.wavelengths.size(); ++w)
            {
                double const f = background_amplitude(s, 0.5 * len3(d) / s.wavelengths[w]);
                sum += s.weights[w] * f * f;
            }
            out[static_cast<std::size_t>(ps * s.fast + pf)] = electron_radius_sq * s.fluence
                                                              * g.polar * g.omega * s.thickness
                                                              * sum / wsum;
        }
    }
    return out;
}

//! Spots plus background.
inline std::vector<double> image(Scene const& s)
{
    std::vector<double> out = spots(s);
    std::vector<double> const bg = background(s);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += bg[i];
    return out;
}

}  // namespace ref
