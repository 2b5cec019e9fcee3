//---------------------------------------------------------------------------//
// Copyright 2026 xtrace developers.
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file xtrace/core/linalg.hpp
//! Fixed-size 3-vectors and 3x3 matrices (row-major, double precision).
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cmath>

namespace xtrace
{
//---------------------------------------------------------------------------//
struct Vec3
{
    double x = 0;
    double y = 0;
    double z = 0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr bool operator==(Vec3 const&, Vec3 const&) = default;
};

constexpr Vec3 operator+(Vec3 const& a, Vec3 const& b)
{
    return {a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Vec3 operator-(Vec3 const& a, Vec3 const& b)
{
    return {a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Vec3 operator*(double s, Vec3 const& v)
{
    return {s * v.x, s * v.y, s * v.z};
}
constexpr Vec3 operator/(Vec3 const& v, double s)
{
    return {v.x / s, v.y / s, v.z / s};
}
constexpr double dot(Vec3 const& a, Vec3 const& b)
{
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr Vec3 cross(Vec3 const& a, Vec3 const& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 const& v)
{
    return std::sqrt(dot(v, v));
}

//---------------------------------------------------------------------------//
//! Row-major 3x3 matrix; `rows[i]` is the i-th row.
struct Mat3
{
    std::array<Vec3, 3> rows{};

    static constexpr Mat3 identity()
    {
        return {{Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}};
    }

    constexpr double operator()(int r, int c) const { return rows[r][c]; }

    friend constexpr bool operator==(Mat3 const&, Mat3 const&) = default;
};

constexpr Vec3 operator*(Mat3 const& m, Vec3 const& v)
{
    return {dot(m.rows[0], v), dot(m.rows[1], v), dot(m.rows[2], v)};
}

constexpr Mat3 transpose(Mat3 const& m)
{
    return {{Vec3{m(0, 0), m(1, 0), m(2, 0)},
             Vec3{m(0, 1), m(1, 1), m(2, 1)},
             Vec3{m(0, 2), m(1, 2), m(2, 2)}}};
}

constexpr Mat3 operator*(Mat3 const& a, Mat3 const& b)
{
    Mat3 const bt = transpose(b);
    Mat3 r;
    for (int i = 0; i < 3; ++i)
    {
        r.rows[i] = {dot(a.rows[i], bt.rows[0]),
                     dot(a.rows[i], bt.rows[1]),
                     dot(a.rows[i], bt.rows[2])};
    }
    return r;
}

constexpr double determinant(Mat3 const& m)
{
    return dot(m.rows[0], cross(m.rows[1], m.rows[2]));
}

//! Largest absolute element of (M^T M - I) and |det M - 1|.
inline double rotation_defect(Mat3 const& m)
{
    Mat3 const mtm = transpose(m) * m;
    double worst = std::abs(determinant(m) - 1.0);
    for (int i = 0; i < 3; ++i)
    {
        for (int j = 0; j < 3; ++j)
        {
            worst = std::fmax(worst, std::abs(mtm(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

//! Rotation by `angle` radians about `axis` (Rodrigues); the axis is
//! normalized here.
inline Mat3 axis_angle_rotation(Vec3 const& axis, double angle)
{
    double const c = std::cos(angle);
    double const s = std::sin(angle);
    double const t = 1.0 - c;
    Vec3 const n = axis / norm(axis);
    double const x = n.x, y = n.y, z = n.z;
    return {{Vec3{c + t * x * x, t * x * y - s * z, t * x * z + s * y},
             Vec3{t * x * y + s * z, c + t * y * y, t * y * z - s * x},
             Vec3{t * x * z - s * y, t * y * z + s * x, c + t * z * z}}};
}

//---------------------------------------------------------------------------//
}  // namespace xtrace
