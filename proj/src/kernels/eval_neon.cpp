#include "cuspfold/kernels.hpp"

#include <arm_neon.h>

namespace cuspfold::kernels {

void eval_batch_neon(const CompiledPoly& p, const double* x, const double* y, const double* z,
                     double* out, std::size_t n)
{
    const std::size_t terms = p.size();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t vx = vld1q_f64(x + i);
        const float64x2_t vy = vld1q_f64(y + i);
        const float64x2_t vz = vld1q_f64(z + i);
        float64x2_t acc = vdupq_n_f64(0.0);
        for (std::size_t k = 0; k < terms; ++k) {
            float64x2_t t = vdupq_n_f64(p.coef[k]);
            for (std::uint32_t j = 0; j < p.ex[k]; ++j) t = vmulq_f64(t, vx);
            for (std::uint32_t j = 0; j < p.ey[k]; ++j) t = vmulq_f64(t, vy);
            for (std::uint32_t j = 0; j < p.ez[k]; ++j) t = vmulq_f64(t, vz);
            acc = vaddq_f64(acc, t);
        }
        vst1q_f64(out + i, acc);
    }
    if (i < n) {
        eval_batch_scalar(p, x + i, y + i, z + i, out + i, n - i);
    }
}

} // namespace cuspfold::kernels
