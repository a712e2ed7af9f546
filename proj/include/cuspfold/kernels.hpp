#pragma once

#include "cuspfold/poly.hpp"

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace cuspfold::kernels {

// Flat structure-of-arrays copy of a Poly3, in the term order Poly3::eval uses.
struct CompiledPoly {
    std::vector<double> coef;
    std::vector<std::uint32_t> ex, ey, ez;

    explicit CompiledPoly(const Poly3& p);
    std::size_t size() const { return coef.size(); }
};

// Points in structure-of-arrays layout.
struct PointBatch {
    std::vector<double> x, y, z;

    PointBatch() = default;
    explicit PointBatch(std::span<const Point3> pts);
    std::size_t size() const { return x.size(); }
};

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

// Best instruction set the running CPU supports among the compiled variants.
Isa detected_isa();
// Variant eval_batch currently dispatches to.
Isa active_isa();
// Pin the dispatch (e.g. to compare variants); ignored if the ISA is unavailable.
// Returns the ISA now active.
Isa force_isa(Isa isa);
bool isa_available(Isa isa);

// out[i] = p(x[i], y[i], z[i]); every variant reproduces Poly3::eval bit for bit.
void eval_batch(const CompiledPoly& p, const PointBatch& pts, std::span<double> out);

void eval_batch_scalar(const CompiledPoly& p, const double* x, const double* y, const double* z,
                       double* out, std::size_t n);
#if defined(CUSPFOLD_HAVE_AVX2)
void eval_batch_avx2(const CompiledPoly& p, const double* x, const double* y, const double* z,
                     double* out, std::size_t n);
#endif
#if defined(CUSPFOLD_HAVE_NEON)
void eval_batch_neon(const CompiledPoly& p, const double* x, const double* y, const double* z,
                     double* out, std::size_t n);
#endif

} // namespace cuspfold::kernels
