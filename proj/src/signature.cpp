#include "cuspfold/signature.hpp"

#include "cuspfold/error.hpp"
#include "cuspfold/regions.hpp"

#include <cmath>
#include <numbers>

namespace cuspfold {

CuspFoldSignature signature_of_sign_vector(const SignVector& sv)
{
    CuspFoldSignature s;
    s.cusp_arrival = sv.a * sv.b * sv.g > 0 ? Zone::SigmaPlus : Zone::SigmaMinus;
    s.visible_branch = sv.a * sv.g > 0 ? Branch::PositiveY : Branch::NegativeY;
    s.zplus_layout = sv.g;
    s.sminus_type = sv.m * sv.t > 0 ? FoldType::Invisible : FoldType::Visible;
    s.zminus_layout = sv.t;
    return s;
}

SignVector sign_vector_of_signature(const CuspFoldSignature& s)
{
    const int g = s.zplus_layout;
    const int ag = s.visible_branch == Branch::PositiveY ? 1 : -1;
    const int a = ag * g;
    const int abg = s.cusp_arrival == Zone::SigmaPlus ? 1 : -1;
    const int b = abg * ag;
    const int t = s.zminus_layout;
    const int mt = s.sminus_type == FoldType::Invisible ? 1 : -1;
    return {a, b, g, mt * t, t};
}

namespace {

constexpr const char* kNotCuspFold = "not a cusp-fold configuration";
constexpr const char* kUnresolvable = "probe radius unresolvable";

Vec3 unit(Vec3 v) { return (1.0 / norm(v)) * v; }

Vec3 in_plane(Vec3 v, Vec3 n) { return v - dot(v, n) * n; }

class Prober {
public:
    Prober(const PSVF& z, Point3 p)
        : z_(z), p_(p), up_(lie_derivative(z.zplus, z.f)), down_(lie_derivative(z.zminus, z.f))
    {
    }

    const Poly3& up() const { return up_; }
    const Poly3& down() const { return down_; }

    Point3 onto_sigma(Point3 q) const
    {
        for (int it = 0; it < 50; ++it) {
            const double fv = z_.f.eval(q);
            if (std::abs(fv) < 1e-14) break;
            const Vec3 g = z_.f.gradient(q);
            const double gg = dot(g, g);
            if (gg == 0.0) throw Error(kUnresolvable);
            q = q - (fv / gg) * g;
        }
        return q;
    }

    // Gauss-Newton onto {f = 0, h = 0}.
    Point3 onto_curve(Point3 q, const Poly3& h) const
    {
        for (int it = 0; it < 60; ++it) {
            const double r1 = z_.f.eval(q), r2 = h.eval(q);
            if (std::abs(r1) < 1e-14 && std::abs(r2) < 1e-13) return q;
            const Vec3 g1 = z_.f.gradient(q), g2 = h.gradient(q);
            const double a11 = dot(g1, g1), a12 = dot(g1, g2), a22 = dot(g2, g2);
            const double det = a11 * a22 - a12 * a12;
            if (!(std::abs(det) > 1e-300)) throw Error(kUnresolvable);
            const double c1 = (r1 * a22 - r2 * a12) / det;
            const double c2 = (r2 * a11 - r1 * a12) / det;
            q = q - (c1 * g1 + c2 * g2);
        }
        if (std::abs(z_.f.eval(q)) < 1e-10 && std::abs(h.eval(q)) < 1e-10) return q;
        throw Error(kUnresolvable);
    }

private:
    const PSVF& z_;
    Point3 p_;
    Poly3 up_, down_;
};

} // namespace

CuspFoldSignature signature_of_psvf(const PSVF& z, Point3 p, double probe_radius)
{
    if (!(probe_radius > 0.0)) {
        throw Error(kUnresolvable);
    }
    const ContactClass upper = classify_contact(z.zplus, z.f, p, Side::Upper);
    const ContactClass lower = classify_contact(z.zminus, z.f, p, Side::Lower);
    if (upper.kind != ContactKind::Cusp || !lower.is_fold()) {
        throw Error(kNotCuspFold);
    }

    const Prober probe(z, p);
    const Vec3 grad_f = z.f.gradient(p);
    const Vec3 n = unit(grad_f);

    // Ambient frame projected onto the tangent plane.
    const Vec3 ex_raw = in_plane({1, 0, 0}, n);
    if (norm(ex_raw) < 0.1) throw Error(kUnresolvable);
    const Vec3 ex = unit(ex_raw);
    const Vec3 ey = cross(n, ex);

    const Vec3 gp = in_plane(probe.up().gradient(p), n);
    const Vec3 gm = in_plane(probe.down().gradient(p), n);
    if (norm(gp) < kLieTol || norm(gm) < kLieTol) {
        throw Error(kNotCuspFold);
    }
    Vec3 d_plus = unit(cross(n, gp));
    Vec3 d_minus = unit(cross(n, gm));
    if (norm(cross(d_plus, d_minus)) < 1e-6) {
        throw Error(kNotCuspFold);  // tangency curves not transversal
    }
    if (std::abs(dot(d_plus, ey)) < 1e-6 || std::abs(dot(d_minus, ex)) < 1e-6) {
        throw Error(kUnresolvable);
    }
    if (dot(d_plus, ey) < 0) d_plus = -1.0 * d_plus;
    if (dot(d_minus, ex) < 0) d_minus = -1.0 * d_minus;

    // In-plane normals to each tangency curve, pointing toward +x and +y.
    Vec3 w_plus = unit(cross(n, d_plus));
    if (dot(w_plus, ex) < 0) w_plus = -1.0 * w_plus;
    Vec3 w_minus = unit(cross(n, d_minus));
    if (dot(w_minus, ey) < 0) w_minus = -1.0 * w_minus;

    const double r = probe_radius;
    CuspFoldSignature s;
    s.cusp_arrival = upper.arrival;

    // Tangency-direction probes along S+.
    {
        const Point3 ahead = probe.onto_curve(p + r * d_plus, probe.up());
        const Point3 behind = probe.onto_curve(p - r * d_plus, probe.up());
        const ContactClass ca = classify_contact(z.zplus, z.f, ahead, Side::Upper);
        const ContactClass cb = classify_contact(z.zplus, z.f, behind, Side::Upper);
        if (!ca.is_fold() || !cb.is_fold() || ca.kind == cb.kind) throw Error(kUnresolvable);
        s.visible_branch = ca.kind == ContactKind::FoldVisible ? Branch::PositiveY : Branch::NegativeY;
    }
    // Along S-.
    {
        const Point3 ahead = probe.onto_curve(p + r * d_minus, probe.down());
        const Point3 behind = probe.onto_curve(p - r * d_minus, probe.down());
        const ContactClass ca = classify_contact(z.zminus, z.f, ahead, Side::Lower);
        const ContactClass cb = classify_contact(z.zminus, z.f, behind, Side::Lower);
        if (ca.kind != lower.kind || cb.kind != lower.kind) throw Error(kUnresolvable);
        s.sminus_type = lower.kind == ContactKind::FoldInvisible ? FoldType::Invisible : FoldType::Visible;
    }
    // Transversal layouts on either side of each curve.
    auto side_sign = [&](const Poly3& h, Vec3 w) {
        const int pos = tol_sign(h.eval(probe.onto_sigma(p + r * w)));
        const int neg = tol_sign(h.eval(probe.onto_sigma(p - r * w)));
        if (pos == 0 || pos != -neg) throw Error(kUnresolvable);
        return pos;
    };
    s.zplus_layout = side_sign(probe.up(), w_plus);
    s.zminus_layout = side_sign(probe.down(), w_minus);

    // Compass probes, offset from the frame axes so none sits on a tangency
    // line; every one must agree with the layout implied above.
    for (int k = 0; k < 8; ++k) {
        const double ang = std::numbers::pi / 8.0 + k * std::numbers::pi / 4.0;
        const Point3 q = probe.onto_sigma(p + r * (std::cos(ang) * ex + std::sin(ang) * ey));
        const int sx = tol_sign(dot(q - p, w_plus));
        const int sy = tol_sign(dot(q - p, w_minus));
        const RegionLabel expected = label_from_signs(s.zplus_layout * sx, s.zminus_layout * sy);
        if (expected == RegionLabel::Boundary || classify_region(z, q) != expected) {
            throw Error(kUnresolvable);
        }
    }
    return s;
}

bool equal_on(const CuspFoldSignature& s1, const CuspFoldSignature& s2, unsigned fields)
{
    if ((fields & kCuspArrival) && s1.cusp_arrival != s2.cusp_arrival) return false;
    if ((fields & kVisibleBranch) && s1.visible_branch != s2.visible_branch) return false;
    if ((fields & kZplusLayout) && s1.zplus_layout != s2.zplus_layout) return false;
    if ((fields & kSminusType) && s1.sminus_type != s2.sminus_type) return false;
    if ((fields & kZminusLayout) && s1.zminus_layout != s2.zminus_layout) return false;
    return true;
}

bool weak_equivalent(const CuspFoldSignature& s1, const CuspFoldSignature& s2)
{
    return equal_on(s1, s2, kAllFields);
}

DistinctnessReport count_distinct_signatures(std::span<const SignVector> forms, unsigned fields)
{
    std::vector<CuspFoldSignature> sigs;
    sigs.reserve(forms.size());
    for (const SignVector& sv : forms) {
        sigs.push_back(signature_of_sign_vector(sv));
    }
    DistinctnessReport report;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        bool seen = false;
        for (std::size_t j = 0; j < i; ++j) {
            if (equal_on(sigs[i], sigs[j], fields)) {
                report.collisions.emplace_back(forms[j], forms[i]);
                seen = true;
            }
        }
        if (!seen) ++report.count_distinct;
    }
    return report;
}

DistinctnessReport verify_theorem_one()
{
    const std::vector<SignVector> forms = all_sign_vectors();
    return count_distinct_signatures(forms, kAllFields);
}

void to_json(nlohmann::json& j, const CuspFoldSignature& s)
{
    j = {
        {"cusp_arrival", s.cusp_arrival == Zone::SigmaPlus ? "Sigma+" : "Sigma-"},
        {"visible_branch", s.visible_branch == Branch::PositiveY ? "positive-y" : "negative-y"},
        {"zplus_layout", s.zplus_layout > 0 ? "+1" : "-1"},
        {"sminus_type", s.sminus_type == FoldType::Visible ? "visible" : "invisible"},
        {"zminus_layout", s.zminus_layout > 0 ? "+1" : "-1"},
    };
}

void from_json(const nlohmann::json& j, CuspFoldSignature& s)
{
    auto pick = [&](const char* key, const char* yes, const char* no) {
        const std::string v = j.at(key).get<std::string>();
        if (v == yes) return true;
        if (v == no) return false;
        throw Error(std::string("invalid value for '") + key + "': " + v);
    };
    s.cusp_arrival = pick("cusp_arrival", "Sigma+", "Sigma-") ? Zone::SigmaPlus : Zone::SigmaMinus;
    s.visible_branch = pick("visible_branch", "positive-y", "negative-y") ? Branch::PositiveY : Branch::NegativeY;
    s.zplus_layout = pick("zplus_layout", "+1", "-1") ? 1 : -1;
    s.sminus_type = pick("sminus_type", "visible", "invisible") ? FoldType::Visible : FoldType::Invisible;
    s.zminus_layout = pick("zminus_layout", "+1", "-1") ? 1 : -1;
}

} // namespace cuspfold
