#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "latentgeom/errors.hpp"

namespace latentgeom {

using LatentVector = std::vector<double>;

inline void require_same_dim(std::span<const double> a, std::span<const double> b, const char* who) {
    if (a.size() != b.size())
        throw DimensionMismatch(std::string(who) + ": dimensions differ");
}

inline double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double squared_norm(std::span<const double> v) { return dot(v, v); }

inline double norm(std::span<const double> v) { return std::sqrt(squared_norm(v)); }

} // namespace latentgeom
