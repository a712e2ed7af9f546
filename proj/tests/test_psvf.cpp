#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cuspfold/error.hpp"
#include "cuspfold/psvf.hpp"
#include "cuspfold/verify.hpp"

#include <cstdio>
#include <fstream>
#include <set>

using namespace cuspfold;

namespace {

const Poly3 X = Poly3::x(), Y = Poly3::y(), Z = Poly3::z();

} // namespace

TEST_CASE("sign vector parsing and printing")
{
    CHECK(SignVector::parse("+++++") == SignVector(1, 1, 1, 1, 1));
    CHECK(SignVector::parse("(+-+,+-)") == SignVector(1, -1, 1, 1, -1));
    CHECK(SignVector::parse("\xE2\x88\x92\xE2\x88\x92+++") == SignVector(-1, -1, 1, 1, 1));
    CHECK(SignVector(1, -1, 1, 1, -1).str() == "+-++-");
    CHECK(SignVector(1, -1, 1, 1, -1).type_label() == "(+-+,+-)");
    CHECK_THROWS_AS(SignVector::parse("++++"), Error);
    CHECK_THROWS_AS(SignVector::parse("+++++-"), Error);
    CHECK_THROWS_AS(SignVector::parse("++0++"), Error);
    CHECK_THROWS_AS(SignVector(1, 1, 0, 1, 1), Error);
    for (const SignVector& sv : all_sign_vectors()) {
        CHECK(SignVector::parse(sv.str()) == sv);
        CHECK(SignVector::parse(sv.type_label()) == sv);
    }
}

TEST_CASE("all sign vectors")
{
    const auto all = all_sign_vectors();
    CHECK(all.size() == 32);
    CHECK(all.front() == SignVector(1, 1, 1, 1, 1));
    CHECK(all.back() == SignVector(-1, -1, -1, -1, -1));
    CHECK(std::set<SignVector>(all.begin(), all.end()).size() == 32);
}

TEST_CASE("canonical forms")
{
    PSVF z = canonical_form({1, 1, 1, 1, 1});
    CHECK(z.f == Z);
    CHECK(z.zplus == SmoothField3{Y, Poly3(1.0), X});
    CHECK(z.zminus == SmoothField3{Poly3(), Poly3(1.0), Y});

    z = canonical_form({-1, -1, -1, -1, -1});
    CHECK(z.zplus == SmoothField3{-Y, Poly3(-1.0), -X});
    CHECK(z.zminus == SmoothField3{Poly3(), Poly3(-1.0), -Y});

    z = canonical_form({1, -1, 1, 1, -1});
    CHECK(z.zplus == SmoothField3{Y, Poly3(-1.0), X});
    CHECK(z.zminus == SmoothField3{Poly3(), Poly3(1.0), -Y});
}

TEST_CASE("unfolded forms")
{
    const SignVector plus{1, 1, 1, 1, 1};
    CHECK(unfolded_form(plus, 0.0) == canonical_form(plus));
    CHECK(unfolded_form(plus, 0.1).zminus == SmoothField3{Poly3(), Poly3(1.0), Y - Poly3(0.1)});
    CHECK(unfolded_form({1, 1, 1, 1, -1}, 0.1).zminus.fz == -Y - Poly3(0.1));
    CHECK(unfolded_form(plus, 0.1).zplus == canonical_form(plus).zplus);
    CHECK_THROWS_WITH_AS(unfolded_form(plus, 0.5), "lambda outside unfolding window", Error);
    CHECK_THROWS_WITH_AS(unfolded_form(plus, -0.7), "lambda outside unfolding window", Error);
    CHECK_NOTHROW(unfolded_form(plus, 0.7, 1.0));
}

TEST_CASE("working box")
{
    const WorkingBox box({1, 0, 0}, 1.0, 2.0, 0.5);
    CHECK(box.contains({1.5, -1.9, 0.4}));
    CHECK_FALSE(box.contains({1.5, -1.9, 0.6}));
    CHECK(box.contains({1.5, -1.9, 0.6}, 0.2));
    CHECK(box.excess({2.5, 0, 0}) == doctest::Approx(0.5));
    CHECK(box.excess({1, 0, 0}) < 0);
    CHECK_THROWS_AS(WorkingBox({0, 0, 0}, 0.0, 1.0, 1.0), Error);
}

TEST_CASE("regularity of the switching manifold")
{
    CHECK(canonical_form({1, 1, 1, 1, 1}).regular_on(WorkingBox{}));
    PSVF cone = canonical_form({1, 1, 1, 1, 1});
    cone.f = X * X + Y * Y - Z * Z;
    CHECK_FALSE(cone.regular_on(WorkingBox{}));
}

TEST_CASE("push-forward through a shear")
{
    const SignVector sv{1, -1, 1, -1, 1};
    const PSVF base = canonical_form(sv);
    const PSVF sheared = sheared_form(sv, 0.1);
    // Sigma is z = 0 in both charts; the shear only moves x.
    CHECK(sheared.f == Z);
    const Point3 pts[] = {{0.3, -0.2, 0.1}, {-0.5, 0.7, -0.3}, {0.0, 0.0, 0.0}};
    for (Point3 q : pts) {
        // Pull q back, evaluate there, push the vector through D(shear).
        const Point3 p{q.x - 0.1 * q.z, q.y, q.z};
        for (bool upper : {true, false}) {
            const Vec3 v = base.field(upper).eval(p);
            const Vec3 want{v.x + 0.1 * v.z, v.y, v.z};
            const Vec3 got = sheared.field(upper).eval(q);
            CHECK(got.x == doctest::Approx(want.x));
            CHECK(got.y == doctest::Approx(want.y));
            CHECK(got.z == doctest::Approx(want.z));
        }
    }
    // Identity map is a no-op.
    CHECK(push_forward(base, {X, Y, Z}, {X, Y, Z}) == base);
}

TEST_CASE("push-forward tilts the switching surface")
{
    const PSVF base = canonical_form({1, 1, 1, 1, 1});
    const PSVF tilted = push_forward(base, {X, Y, Z + 0.1 * X}, {X, Y, Z - 0.1 * X});
    CHECK(tilted.f == Z - 0.1 * X);
    CHECK(tilted.regular_on(WorkingBox{}));
}

TEST_CASE("JSON round trip")
{
    const PSVF fixture = perturbed_fixture();
    nlohmann::json j = fixture;
    CHECK(j.contains("f"));
    CHECK(j["zplus"].size() == 3);
    CHECK(j.get<PSVF>() == fixture);

    const std::string path = "test_psvf_roundtrip.json";
    {
        std::ofstream out(path);
        out << j.dump();
    }
    CHECK(load_psvf(path) == fixture);
    std::remove(path.c_str());

    CHECK_THROWS_AS(load_psvf("does-not-exist.json"), Error);
    nlohmann::json bad = j;
    bad["zplus"] = nlohmann::json::array({j["f"]});
    CHECK_THROWS_AS(bad.get<PSVF>(), Error);
    bad = j;
    bad["f"] = nlohmann::json::array({{{"exp", {1, 2}}, {"coef", 1.0}}});
    CHECK_THROWS_AS(bad.get<PSVF>(), Error);
}
