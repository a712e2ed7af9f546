#include "cuspfold/regions.hpp"

#include "cuspfold/error.hpp"
#include "cuspfold/kernels.hpp"
#include "cuspfold/tangency.hpp"

#include <cmath>

namespace cuspfold {

std::string_view region_name(RegionLabel r)
{
    switch (r) {
    case RegionLabel::Sliding: return "sliding";
    case RegionLabel::Escaping: return "escaping";
    case RegionLabel::CrossingUp: return "crossing-up";
    case RegionLabel::CrossingDown: return "crossing-down";
    case RegionLabel::Boundary: return "boundary";
    }
    return "boundary";
}

int tol_sign(double v, double tol)
{
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

RegionLabel label_from_signs(int zplus_sign, int zminus_sign)
{
    if (zplus_sign > 0 && zminus_sign > 0) return RegionLabel::CrossingUp;
    if (zplus_sign < 0 && zminus_sign < 0) return RegionLabel::CrossingDown;
    if (zplus_sign < 0 && zminus_sign > 0) return RegionLabel::Sliding;
    if (zplus_sign > 0 && zminus_sign < 0) return RegionLabel::Escaping;
    return RegionLabel::Boundary;
}

RegionLabel classify_region(const PSVF& z, Point3 q)
{
    if (!(std::abs(z.f.eval(q)) < 1e-9)) {
        throw Error("point not on switching manifold");
    }
    const double a = lie_derivative(z.zplus, z.f).eval(q);
    const double b = lie_derivative(z.zminus, z.f).eval(q);
    return label_from_signs(tol_sign(a), tol_sign(b));
}

std::vector<RegionLabel> classify_region_batch(const PSVF& z, std::span<const Point3> pts)
{
    const kernels::CompiledPoly up(lie_derivative(z.zplus, z.f));
    const kernels::CompiledPoly down(lie_derivative(z.zminus, z.f));
    const kernels::PointBatch batch(pts);
    std::vector<double> a(pts.size()), b(pts.size());
    kernels::eval_batch(up, batch, a);
    kernels::eval_batch(down, batch, b);
    std::vector<RegionLabel> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        out[i] = label_from_signs(tol_sign(a[i]), tol_sign(b[i]));
    }
    return out;
}

RegionLabel SectorLayout::label_of(double x, double y) const
{
    const int sx = tol_sign(x);
    const int sy = tol_sign(y - lower_offset);
    if (sx == 0 || sy == 0) return RegionLabel::Boundary;
    return at(sx, sy);
}

SectorLayout sector_layout(const SignVector& sv, double lambda, double epsilon)
{
    if (!(std::abs(lambda) < epsilon)) {
        throw Error("lambda outside unfolding window");
    }
    SectorLayout layout;
    layout.lower_offset = sv.t * lambda;
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            // Z+f = g x and Z-f = t (y - t lambda).
            layout.labels[SectorLayout::index(sx, sy)] = label_from_signs(sv.g * sx, sv.t * sy);
        }
    }
    return layout;
}

} // namespace cuspfold
