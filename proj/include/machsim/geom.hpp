#pragma once
#include <cmath>

namespace machsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double k) const { return {x * k, y * k}; }
    bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
};

inline double dist(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Unit vector along v, or (0,0) for the zero vector.
inline Vec2 normalized(Vec2 v) {
    double n = v.norm();
    if (n == 0.0) return {0.0, 0.0};
    return {v.x / n, v.y / n};
}

}  // namespace machsim
