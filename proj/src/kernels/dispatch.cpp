#include "cuspfold/kernels.hpp"

#include "cuspfold/error.hpp"

#include <atomic>

namespace cuspfold::kernels {

namespace {

using EvalFn = void (*)(const CompiledPoly&, const double*, const double*, const double*, double*,
                        std::size_t);

EvalFn fn_for(Isa isa)
{
    switch (isa) {
#if defined(CUSPFOLD_HAVE_AVX2)
    case Isa::Avx2: return &eval_batch_avx2;
#endif
#if defined(CUSPFOLD_HAVE_NEON)
    case Isa::Neon: return &eval_batch_neon;
#endif
    default: return &eval_batch_scalar;
    }
}

std::atomic<Isa>& active()
{
    static std::atomic<Isa> isa{detected_isa()};
    return isa;
}

} // namespace

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    }
    return "scalar";
}

bool isa_available(Isa isa)
{
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(CUSPFOLD_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::Neon:
#if defined(CUSPFOLD_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa detected_isa()
{
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
}

Isa active_isa() { return active().load(); }

Isa force_isa(Isa isa)
{
    if (isa_available(isa)) {
        active().store(isa);
    }
    return active().load();
}

void eval_batch(const CompiledPoly& p, const PointBatch& pts, std::span<double> out)
{
    if (out.size() < pts.size()) {
        throw Error("output span shorter than point batch");
    }
    fn_for(active_isa())(p, pts.x.data(), pts.y.data(), pts.z.data(), out.data(), pts.size());
}

} // namespace cuspfold::kernels
