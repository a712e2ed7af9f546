// Compiled with -mavx2 only; FMA stays off so products and sums round exactly
// like the scalar path.
#include "cuspfold/kernels.hpp"

#include <immintrin.h>

namespace cuspfold::kernels {

void eval_batch_avx2(const CompiledPoly& p, const double* x, const double* y, const double* z,
                     double* out, std::size_t n)
{
    const std::size_t terms = p.size();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vx = _mm256_loadu_pd(x + i);
        const __m256d vy = _mm256_loadu_pd(y + i);
        const __m256d vz = _mm256_loadu_pd(z + i);
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < terms; ++k) {
            __m256d t = _mm256_set1_pd(p.coef[k]);
            for (std::uint32_t j = 0; j < p.ex[k]; ++j) t = _mm256_mul_pd(t, vx);
            for (std::uint32_t j = 0; j < p.ey[k]; ++j) t = _mm256_mul_pd(t, vy);
            for (std::uint32_t j = 0; j < p.ez[k]; ++j) t = _mm256_mul_pd(t, vz);
            acc = _mm256_add_pd(acc, t);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) {
        eval_batch_scalar(p, x + i, y + i, z + i, out + i, n - i);
    }
}

} // namespace cuspfold::kernels
