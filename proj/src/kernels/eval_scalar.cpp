#include "cuspfold/kernels.hpp"

namespace cuspfold::kernels {

CompiledPoly::CompiledPoly(const Poly3& p)
{
    for (const auto& [e, c] : p.terms()) {
        coef.push_back(c);
        ex.push_back(e[0]);
        ey.push_back(e[1]);
        ez.push_back(e[2]);
    }
}

PointBatch::PointBatch(std::span<const Point3> pts)
{
    x.reserve(pts.size());
    y.reserve(pts.size());
    z.reserve(pts.size());
    for (const Point3& q : pts) {
        x.push_back(q.x);
        y.push_back(q.y);
        z.push_back(q.z);
    }
}

void eval_batch_scalar(const CompiledPoly& p, const double* x, const double* y, const double* z,
                       double* out, std::size_t n)
{
    const std::size_t terms = p.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t k = 0; k < terms; ++k) {
            double t = p.coef[k];
            for (std::uint32_t j = 0; j < p.ex[k]; ++j) t *= x[i];
            for (std::uint32_t j = 0; j < p.ey[k]; ++j) t *= y[i];
            for (std::uint32_t j = 0; j < p.ez[k]; ++j) t *= z[i];
            acc += t;
        }
        out[i] = acc;
    }
}

} // namespace cuspfold::kernels
