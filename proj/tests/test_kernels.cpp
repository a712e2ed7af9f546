#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspfold/kernels.hpp"

#include <cstring>
#include <random>

using namespace cuspfold;
using namespace cuspfold::kernels;

namespace {

Poly3 random_poly(std::mt19937_64& rng, int terms)
{
    std::uniform_int_distribution<std::uint32_t> ex(0, 4);
    std::uniform_real_distribution<double> c(-3.0, 3.0);
    Poly3 p;
    for (int i = 0; i < terms; ++i) p += Poly3::monomial({ex(rng), ex(rng), ex(rng)}, c(rng));
    return p;
}

std::vector<Point3> random_points(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<Point3> pts(n);
    for (Point3& q : pts) q = {u(rng), u(rng), u(rng)};
    return pts;
}

bool bitwise_equal(double a, double b)
{
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

struct IsaGuard {
    Isa saved = active_isa();
    ~IsaGuard() { force_isa(saved); }
};

} // namespace

TEST_CASE("scalar kernel reproduces Poly3::eval bit for bit")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly3 p = random_poly(rng, 1 + trial % 9);
        const std::vector<Point3> pts = random_points(rng, 37);
        const CompiledPoly cp(p);
        const PointBatch batch(pts);
        std::vector<double> out(pts.size());
        eval_batch_scalar(cp, batch.x.data(), batch.y.data(), batch.z.data(), out.data(), out.size());
        for (std::size_t i = 0; i < pts.size(); ++i) CHECK(bitwise_equal(out[i], p.eval(pts[i])));
    }
}

TEST_CASE("every available variant matches the scalar kernel bit for bit")
{
    IsaGuard guard;
    std::mt19937_64 rng(11);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (!isa_available(isa)) continue;
        CAPTURE(isa_name(isa));
        REQUIRE(force_isa(isa) == isa);
        // Sizes straddle the vector width so remainder lanes are exercised.
        for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 17u, 1000u}) {
            const Poly3 p = random_poly(rng, 7);
            const std::vector<Point3> pts = random_points(rng, n);
            const CompiledPoly cp(p);
            const PointBatch batch(pts);
            std::vector<double> out(n), ref(n);
            eval_batch(cp, batch, out);
            eval_batch_scalar(cp, batch.x.data(), batch.y.data(), batch.z.data(), ref.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(bitwise_equal(out[i], ref[i]));
        }
    }
}

TEST_CASE("zero polynomial and constants")
{
    IsaGuard guard;
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (!isa_available(isa)) continue;
        force_isa(isa);
        const std::vector<Point3> pts{{1, 2, 3}, {0, 0, 0}, {-1, 5, 2}, {4, 4, 4}, {9, 9, 9}};
        const PointBatch batch(pts);
        std::vector<double> out(pts.size(), -1.0);
        eval_batch(CompiledPoly(Poly3()), batch, out);
        for (double v : out) CHECK(v == 0.0);
        eval_batch(CompiledPoly(Poly3(2.5)), batch, out);
        for (double v : out) CHECK(v == 2.5);
    }
}

TEST_CASE("dispatch bookkeeping")
{
    IsaGuard guard;
    CHECK(isa_available(Isa::Scalar));
    CHECK(isa_available(detected_isa()));
    CHECK(force_isa(Isa::Scalar) == Isa::Scalar);
    CHECK(active_isa() == Isa::Scalar);
    CHECK(isa_name(Isa::Avx2) == "avx2");
#if !defined(CUSPFOLD_HAVE_NEON)
    // Unavailable requests leave the dispatch unchanged.
    CHECK(force_isa(Isa::Neon) == Isa::Scalar);
#endif
}
