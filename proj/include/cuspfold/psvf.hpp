#pragma once

#include "cuspfold/poly.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace cuspfold {

// Signs of (alpha, beta, gamma, mu, theta); each entry is exactly +1 or -1.
struct SignVector {
    int a = 1;
    int b = 1;
    int g = 1;
    int m = 1;
    int t = 1;

    SignVector() = default;
    SignVector(int a_, int b_, int g_, int m_, int t_);

    // Accepts "+++++", "(+++,++)", and '-' or U+2212 for minus.
    static SignVector parse(std::string_view text);
    // Compact "+++++" form.
    std::string str() const;
    // The "(+++,++)" type notation.
    std::string type_label() const;

    friend bool operator==(const SignVector&, const SignVector&) = default;
    friend auto operator<=>(const SignVector&, const SignVector&) = default;
};

// 32 sign vectors in lexicographic order with '+' before '-'.
std::vector<SignVector> all_sign_vectors();

struct SmoothField3 {
    Poly3 fx, fy, fz;

    Vec3 eval(Point3 q) const { return {fx.eval(q), fy.eval(q), fz.eval(q)}; }
    friend bool operator==(const SmoothField3&, const SmoothField3&) = default;
};

struct WorkingBox {
    Point3 center{0.0, 0.0, 0.0};
    double rx = 1.0;
    double ry = 1.0;
    double rz = 1.0;

    WorkingBox() = default;
    WorkingBox(Point3 c, double hx, double hy, double hz);

    bool contains(Point3 q, double slack = 0.0) const;
    // <= 0 inside, > 0 outside (max-norm distance past the faces).
    double excess(Point3 q) const;
};

// Upper field acts where f >= 0, lower where f <= 0.
struct PSVF {
    Poly3 f;
    SmoothField3 zplus;
    SmoothField3 zminus;

    const SmoothField3& field(bool upper) const { return upper ? zplus : zminus; }

    // Samples a grid over the box, locates sign changes of f along grid edges
    // and checks grad f is nonzero there.
    bool regular_on(const WorkingBox& box, int n = 9) const;

    friend bool operator==(const PSVF&, const PSVF&) = default;
};

inline constexpr double kDefaultUnfoldingRadius = 0.5;

PSVF canonical_form(const SignVector& sv);
// Throws Error("lambda outside unfolding window") when |lambda| >= epsilon.
PSVF unfolded_form(const SignVector& sv, double lambda, double epsilon = kDefaultUnfoldingRadius);

// Push a field forward through the polynomial map `forward` whose inverse is
// `inverse`: returns the field D(forward) * Z(inverse(q)) and f(inverse(q)).
PSVF push_forward(const PSVF& z, const std::array<Poly3, 3>& forward, const std::array<Poly3, 3>& inverse);

void to_json(nlohmann::json& j, const Poly3& p);
void from_json(const nlohmann::json& j, Poly3& p);
void to_json(nlohmann::json& j, const PSVF& z);
void from_json(const nlohmann::json& j, PSVF& z);

PSVF load_psvf(const std::string& path);

} // namespace cuspfold
