#pragma once

#include "cuspfold/psvf.hpp"

#include <array>
#include <span>
#include <string_view>
#include <vector>

namespace cuspfold {

enum class RegionLabel { Sliding, Escaping, CrossingUp, CrossingDown, Boundary };

std::string_view region_name(RegionLabel r);

inline constexpr double kRegionTol = 1e-9;

// Truth table on the signs (+1, -1, 0) of Z+f and Z-f.
RegionLabel label_from_signs(int zplus_sign, int zminus_sign);

int tol_sign(double v, double tol = kRegionTol);

RegionLabel classify_region(const PSVF& z, Point3 q);

// Batch version for points already on the switching manifold; uses the
// dispatched polynomial kernels and skips the on-manifold check.
std::vector<RegionLabel> classify_region_batch(const PSVF& z, std::span<const Point3> pts);

// Labels of the four sectors of the plane Sigma cut by S+ (x = 0) and the
// lower tangency line y = t * lambda, keyed by the side signs (sign x,
// sign(y - t lambda)).
struct SectorLayout {
    double lower_offset = 0.0;  // y coordinate of the lower tangency line
    std::array<RegionLabel, 4> labels{};

    static constexpr std::size_t index(int sx, int sy) { return (sx > 0 ? 0u : 1u) + (sy > 0 ? 0u : 2u); }
    RegionLabel at(int sx, int sy) const { return labels[index(sx, sy)]; }

    // Sector containing a point of the plane; Boundary on either line.
    RegionLabel label_of(double x, double y) const;

    friend bool operator==(const SectorLayout&, const SectorLayout&) = default;
};

SectorLayout sector_layout(const SignVector& sv, double lambda, double epsilon = kDefaultUnfoldingRadius);

} // namespace cuspfold
