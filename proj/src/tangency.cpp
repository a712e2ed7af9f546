#include "cuspfold/tangency.hpp"

#include "cuspfold/error.hpp"

#include <cmath>

namespace cuspfold {

std::string ContactClass::str() const
{
    switch (kind) {
    case ContactKind::Transversal: return sign > 0 ? "transversal(+)" : "transversal(-)";
    case ContactKind::FoldVisible: return "fold(visible)";
    case ContactKind::FoldInvisible: return "fold(invisible)";
    case ContactKind::Cusp: return arrival == Zone::SigmaPlus ? "cusp(Sigma+)" : "cusp(Sigma-)";
    case ContactKind::Degenerate:
        return order == 0 ? "degenerate(all-vanish)" : "degenerate(order " + std::to_string(order) + ")";
    }
    return "unknown";
}

Poly3 lie_derivative(const SmoothField3& v, const Poly3& g)
{
    return v.fx * g.partial(Var::X) + v.fy * g.partial(Var::Y) + v.fz * g.partial(Var::Z);
}

std::vector<Poly3> lie_chain(const SmoothField3& v, const Poly3& g, int k)
{
    if (k > kMaxChainDepth) {
        throw Error("chain depth exceeded");
    }
    if (k < 1) {
        throw Error("chain depth must be positive");
    }
    std::vector<Poly3> chain;
    chain.reserve(static_cast<std::size_t>(k));
    Poly3 cur = g;
    for (int i = 0; i < k; ++i) {
        cur = lie_derivative(v, cur);
        chain.push_back(cur);
    }
    return chain;
}

ContactClass classify_contact(const SmoothField3& v, const Poly3& f, Point3 q, Side side)
{
    if (!(std::abs(f.eval(q)) < 1e-9)) {
        throw Error("point not on switching manifold");
    }
    const std::vector<Poly3> chain = lie_chain(v, f, 3);
    const double l1 = chain[0].eval(q);
    const double l2 = chain[1].eval(q);
    const double l3 = chain[2].eval(q);

    if (std::abs(l1) > kLieTol) {
        return ContactClass::transversal(l1 > 0 ? 1 : -1);
    }
    if (std::abs(l2) > kLieTol) {
        // Visible when the tangent orbit stays in the field's own zone.
        const bool visible = side == Side::Upper ? l2 > 0 : l2 < 0;
        return ContactClass::fold(visible);
    }
    if (std::abs(l3) > kLieTol) {
        return ContactClass::cusp(l3 > 0 ? Zone::SigmaPlus : Zone::SigmaMinus);
    }
    const std::vector<Poly3> deep = lie_chain(v, f, kMaxChainDepth);
    for (int k = 3; k < kMaxChainDepth; ++k) {
        if (std::abs(deep[static_cast<std::size_t>(k)].eval(q)) > kLieTol) {
            return ContactClass::degenerate(k + 1);
        }
    }
    return ContactClass::degenerate(0);
}

Point3 cusp_orbit(const SignVector& sv, double t)
{
    return {0.5 * t * t * sv.a * sv.b, t * sv.b, t * t * t * sv.a * sv.b * sv.g / 6.0};
}

namespace {

struct Affine {
    Vec3 normal;
    double offset;
};

std::optional<Affine> as_affine(const Poly3& p)
{
    if (p.degree() > 1) {
        return std::nullopt;
    }
    return Affine{{p.coef({1, 0, 0}), p.coef({0, 1, 0}), p.coef({0, 0, 1})}, p.coef({0, 0, 0})};
}

} // namespace

std::optional<Line3> tangency_line(const PSVF& z, Side side)
{
    const auto plane = as_affine(z.f);
    const auto contact = as_affine(lie_derivative(z.field(side == Side::Upper), z.f));
    if (!plane || !contact) {
        return std::nullopt;
    }
    const Vec3 n1 = plane->normal;
    const Vec3 n2 = contact->normal;
    Vec3 dir = cross(n1, n2);
    const double len = norm(dir);
    if (len < 1e-12) {
        return std::nullopt;
    }
    dir = (1.0 / len) * dir;
    for (int i = 0; i < 3; ++i) {
        if (dir[i] != 0.0) {
            if (dir[i] < 0.0) dir = -1.0 * dir;
            break;
        }
    }
    // Least-norm point on n1.q = -d1, n2.q = -d2.
    const double g11 = dot(n1, n1), g12 = dot(n1, n2), g22 = dot(n2, n2);
    const double det = g11 * g22 - g12 * g12;
    const double r1 = -plane->offset, r2 = -contact->offset;
    const double c1 = (r1 * g22 - r2 * g12) / det;
    const double c2 = (r2 * g11 - r1 * g12) / det;
    Point3 point = c1 * n1 + c2 * n2;
    // Canonical offsets are exact; avoid printing -0.
    point = {point.x + 0.0, point.y + 0.0, point.z + 0.0};
    return Line3{point, dir};
}

} // namespace cuspfold
