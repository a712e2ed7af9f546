#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspfold/error.hpp"
#include "cuspfold/poly.hpp"

#include <cmath>
#include <random>

using namespace cuspfold;

namespace {

Poly3 random_poly(std::mt19937_64& rng, int max_deg, int terms)
{
    std::uniform_int_distribution<std::uint32_t> ex(0, static_cast<std::uint32_t>(max_deg));
    std::uniform_int_distribution<int> c(-5, 5);
    Poly3 p;
    for (int i = 0; i < terms; ++i) {
        p += Poly3::monomial({ex(rng), ex(rng), ex(rng)}, c(rng));
    }
    return p;
}

Point3 random_point(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    return {u(rng), u(rng), u(rng)};
}

// Independent oracle: sign-change scan plus plain bisection.
std::vector<double> bisection_roots(const std::vector<double>& c, double lo, double hi)
{
    auto f = [&](double t) {
        double s = 0.0, p = 1.0;
        for (double ci : c) {
            s += ci * p;
            p *= t;
        }
        return s;
    };
    std::vector<double> out;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double a = lo + (hi - lo) * i / n, b = lo + (hi - lo) * (i + 1) / n;
        if (f(a) == 0.0) out.push_back(a);
        if ((f(a) < 0) != (f(b) < 0) && f(b) != 0.0) {
            for (int k = 0; k < 200; ++k) {
                const double m = 0.5 * (a + b);
                ((f(a) < 0) == (f(m) < 0) ? a : b) = m;
            }
            out.push_back(0.5 * (a + b));
        }
    }
    return out;
}

} // namespace

TEST_CASE("zero coefficients are never stored")
{
    const Poly3 x = Poly3::x();
    CHECK((x - x).is_zero());
    CHECK((x * 0.0).size() == 0);
    CHECK(Poly3(0.0).is_zero());
    CHECK(Poly3(0.0) == Poly3());
    CHECK((x + Poly3::y() - x) == Poly3::y());
}

TEST_CASE("evaluation and degree")
{
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    const Poly3 p = 2.0 * x * x * y - 3.0 * z + Poly3(1.5);
    CHECK(p.degree() == 3);
    CHECK(Poly3().degree() == -1);
    CHECK(p.eval({1, 2, 3}) == doctest::Approx(2 * 2 - 9 + 1.5));
    CHECK(p.coef({2, 1, 0}) == 2.0);
    CHECK(p.coef({1, 1, 1}) == 0.0);
    CHECK(eval(p, {0, 0, 0}) == 1.5);
}

TEST_CASE("partial derivatives")
{
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    const Poly3 p = x * x * y + 4.0 * y * z * z * z;
    CHECK(p.partial(Var::X) == 2.0 * x * y);
    CHECK(partial(p, Var::Y) == x * x + 4.0 * z * z * z);
    CHECK(p.partial(Var::Z) == 12.0 * y * z * z);
    CHECK(Poly3(7.0).partial(Var::X).is_zero());
    const Vec3 g = p.gradient({1, 2, 1});
    CHECK(g.x == doctest::Approx(4.0));
    CHECK(g.y == doctest::Approx(5.0));
    CHECK(g.z == doctest::Approx(24.0));
}

TEST_CASE("Leibniz and ring properties on random polynomials")
{
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 200; ++trial) {
        const Poly3 p = random_poly(rng, 3, 5), q = random_poly(rng, 3, 5), r = random_poly(rng, 2, 3);
        for (Var v : {Var::X, Var::Y, Var::Z}) {
            // Integer coefficients keep every operation exact.
            CHECK(partial(p * q, v) == partial(p, v) * q + p * partial(q, v));
            CHECK(partial(p + q, v) == partial(p, v) + partial(q, v));
        }
        CHECK(p * q == q * p);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(add(p, q) == p + q);
        CHECK(mul(p, q) == p * q);
        const Point3 pt = random_point(rng);
        CHECK((p * q).eval(pt) == doctest::Approx(p.eval(pt) * q.eval(pt)).epsilon(1e-9));
    }
}

TEST_CASE("composition is a ring homomorphism")
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const Poly3 p = random_poly(rng, 2, 4), q = random_poly(rng, 2, 4);
        const Poly3 a = random_poly(rng, 1, 3), b = random_poly(rng, 1, 3), c = random_poly(rng, 1, 3);
        CHECK((p * q).compose(a, b, c) == p.compose(a, b, c) * q.compose(a, b, c));
        CHECK((p + q).compose(a, b, c) == p.compose(a, b, c) + q.compose(a, b, c));
        const Point3 pt = random_point(rng);
        const Point3 img{a.eval(pt), b.eval(pt), c.eval(pt)};
        CHECK(p.compose(a, b, c).eval(pt) == doctest::Approx(p.eval(img)).epsilon(1e-9));
    }
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    const Poly3 p = x * y + z;
    CHECK(p.compose(x, y, z) == p);
}

TEST_CASE("restriction to a line")
{
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    const Poly3 p = x * y - z * z * z;
    const std::vector<double> c = p.on_line({1, 2, 0}, {1, 0, 1});
    // (1 + t) * 2 - t^3
    REQUIRE(c.size() == 4);
    CHECK(c[0] == doctest::Approx(2.0));
    CHECK(c[1] == doctest::Approx(2.0));
    CHECK(c[2] == doctest::Approx(0.0));
    CHECK(c[3] == doctest::Approx(-1.0));
    CHECK(horner(c, 2.0) == doctest::Approx(6.0 - 8.0));
}

TEST_CASE("roots of 0.5 - t + t^3/6 match the bisection oracle")
{
    const std::vector<double> c{0.5, -1.0, 0.0, 1.0 / 6.0};
    const std::vector<double> got = roots_univariate(c, 0.0, 5.0);
    const std::vector<double> want = bisection_roots(c, 0.0, 5.0);
    REQUIRE(want.size() == 2);
    REQUIRE(got.size() == 2);
    // Frozen from numpy.roots on the same coefficients.
    CHECK(want[0] == doctest::Approx(0.5239763970818662).epsilon(1e-12));
    CHECK(want[1] == doctest::Approx(2.1451026912004236).epsilon(1e-12));
    for (int i = 0; i < 2; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
}

TEST_CASE("roots against random factored cubics and quartics")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 3 + trial % 2;
        std::vector<double> rs;
        for (int i = 0; i < n; ++i) rs.push_back(u(rng));
        std::sort(rs.begin(), rs.end());
        bool separated = true;
        for (int i = 1; i < n; ++i) separated = separated && rs[i] - rs[i - 1] > 1e-3;
        if (!separated) continue;
        std::vector<double> c{1.0};
        for (double r : rs) {
            std::vector<double> next(c.size() + 1, 0.0);
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k] -= r * c[k];
                next[k + 1] += c[k];
            }
            c = next;
        }
        const std::vector<double> got = roots_univariate(c, -4.0, 4.0);
        REQUIRE(got.size() == rs.size());
        for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - rs[i]) < 1e-7);
    }
}

TEST_CASE("touching and repeated roots")
{
    // (t - 1)^2 (t + 2)
    const std::vector<double> dbl{2.0, -3.0, 0.0, 1.0};
    auto r = roots_univariate(dbl, -5.0, 5.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-2.0));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-9));

    // (t - 1)^3
    const std::vector<double> tri{-1.0, 3.0, -3.0, 1.0};
    r = roots_univariate(tri, -5.0, 5.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == doctest::Approx(1.0).epsilon(1e-9));

    // t^2 touching zero at 0; window clips
    const std::vector<double> sq{0.0, 0.0, 1.0};
    r = roots_univariate(sq, -1.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0]) < 1e-12);
    CHECK(roots_univariate(sq, 0.5, 1.0).empty());

    // (t^2 - 1)^2 has two double roots
    const std::vector<double> quart{1.0, 0.0, -2.0, 0.0, 1.0};
    r = roots_univariate(quart, -3.0, 3.0);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(r[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("low-degree and degenerate inputs")
{
    const std::vector<double> lin{-1.0, 2.0};
    auto r = roots_univariate(lin, 0.0, 1.0);
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 0.5);
    const std::vector<double> constant{3.0, 0.0, 0.0};
    CHECK(roots_univariate(constant, -1.0, 1.0).empty());
    const std::vector<double> zero{0.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_WITH_AS(roots_univariate(zero, 0.0, 1.0), "degenerate event function", Error);
}
