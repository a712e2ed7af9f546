#include "cuspfold/verify.hpp"

#include "cuspfold/bifurcation.hpp"
#include "cuspfold/error.hpp"
#include "cuspfold/kernels.hpp"
#include "cuspfold/regions.hpp"
#include "cuspfold/signature.hpp"
#include "cuspfold/tangency.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace cuspfold {

PSVF perturbed_fixture()
{
    const Poly3 x = Poly3::x(), y = Poly3::y(), z = Poly3::z();
    PSVF p;
    p.f = z;
    p.zplus = {y + 0.1 * x * x, Poly3(1.0), x + 0.05 * y * y * y};
    p.zminus = {0.02 * z, Poly3(1.0), y + 0.1 * x * x};
    return p;
}

std::array<Poly3, 3> shear_map(double c)
{
    return {Poly3::x() + c * Poly3::z(), Poly3::y(), Poly3::z()};
}

PSVF sheared_form(const SignVector& sv, double c)
{
    return push_forward(canonical_form(sv), shear_map(c), shear_map(-c));
}

std::string VerifyReport::text() const
{
    std::string s;
    for (const std::string& l : lines) s += l + "\n";
    return s + summary + "\n";
}

namespace {

std::string fmt(const char* f, auto... args)
{
    char buf[256];
    std::snprintf(buf, sizeof(buf), f, args...);
    return buf;
}

class Reporter {
public:
    explicit Reporter(VerifyReport& r) : r_(r) {}

    void check(bool ok, const std::string& what, const std::vector<std::string>& diffs = {})
    {
        r_.lines.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
        for (std::size_t i = 0; i < diffs.size() && i < 10; ++i) r_.lines.push_back("        " + diffs[i]);
        if (diffs.size() > 10) r_.lines.push_back(fmt("        ... %zu more", diffs.size() - 10));
        r_.ok = r_.ok && ok;
    }

private:
    VerifyReport& r_;
};

std::string sig_str(const CuspFoldSignature& s)
{
    nlohmann::json j = s;
    return j.dump();
}

void check_distinct(Reporter& rep, int& distinct)
{
    const DistinctnessReport t1 = verify_theorem_one();
    distinct = t1.count_distinct;
    std::vector<std::string> diffs;
    for (const auto& [p, q] : t1.collisions) diffs.push_back(p.str() + " collides with " + q.str());
    rep.check(t1.count_distinct == 32 && t1.collisions.empty(),
              fmt("signatures of the 32 canonical forms: %d distinct", t1.count_distinct), diffs);

    int bijective = 0;
    for (const SignVector& sv : all_sign_vectors()) {
        bijective += sign_vector_of_signature(signature_of_sign_vector(sv)) == sv;
    }
    rep.check(bijective == 32, fmt("signature inverse recovers the sign vector: %d/32", bijective));
}

void check_lie_identities(Reporter& rep)
{
    const Poly3 x = Poly3::x(), y = Poly3::y();
    std::vector<std::string> diffs;
    for (const SignVector& sv : all_sign_vectors()) {
        const PSVF z = canonical_form(sv);
        const std::vector<Poly3> up = lie_chain(z.zplus, z.f, 3);
        const std::vector<Poly3> down = lie_chain(z.zminus, z.f, 2);
        const std::vector<Poly3> up_want{double(sv.g) * x, double(sv.a * sv.g) * y, Poly3(double(sv.a * sv.b * sv.g))};
        const std::vector<Poly3> down_want{double(sv.t) * y, Poly3(double(sv.m * sv.t))};
        if (up != up_want || down != down_want) diffs.push_back(sv.str());
    }
    rep.check(diffs.empty(), "Lie-derivative chains of the 32 canonical forms", diffs);
}

void check_numeric_signatures(Reporter& rep)
{
    const double radii[] = {0.05, 0.1, 0.2};
    std::vector<std::string> diffs;
    int agree = 0;
    for (const SignVector& sv : all_sign_vectors()) {
        const CuspFoldSignature want = signature_of_sign_vector(sv);
        const PSVF forms[2] = {canonical_form(sv), sheared_form(sv)};
        for (int k = 0; k < 2; ++k) {
            for (double r : radii) {
                try {
                    const CuspFoldSignature got = signature_of_psvf(forms[k], {0, 0, 0}, r);
                    if (got == want) {
                        ++agree;
                        continue;
                    }
                    diffs.push_back(fmt("%s %s r=%.2f: got %s want %s", sv.str().c_str(), k ? "sheared" : "canonical",
                                        r, sig_str(got).c_str(), sig_str(want).c_str()));
                } catch (const Error& e) {
                    diffs.push_back(fmt("%s %s r=%.2f: %s", sv.str().c_str(), k ? "sheared" : "canonical", r, e.what()));
                }
            }
        }
    }
    rep.check(diffs.empty(), fmt("numeric vs analytic signature, canonical and sheared forms: %d/192", agree), diffs);

    diffs.clear();
    const CuspFoldSignature want = signature_of_sign_vector({1, 1, 1, 1, 1});
    for (double r : radii) {
        try {
            const CuspFoldSignature got = signature_of_psvf(perturbed_fixture(), {0, 0, 0}, r);
            if (!(got == want)) diffs.push_back(fmt("r=%.2f: got %s", r, sig_str(got).c_str()));
        } catch (const Error& e) {
            diffs.push_back(fmt("r=%.2f: %s", r, e.what()));
        }
    }
    rep.check(diffs.empty(), "nonlinear perturbation keeps the signature of +++++", diffs);
}

void check_product_rule(Reporter& rep, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    constexpr int kPoints = 500;
    std::vector<std::string> diffs;
    long checked = 0;
    for (const SignVector& sv : all_sign_vectors()) {
        for (double lambda : {0.0, 0.1, -0.1}) {
            const PSVF z = unfolded_form(sv, lambda);
            const double ly = sv.t * lambda;
            std::vector<Point3> pts;
            while (pts.size() < kPoints) {
                const double x = coord(rng), y = coord(rng);
                if (std::abs(x) < 1e-6 || std::abs(y - ly) < 1e-6) continue;
                pts.push_back({x, y, 0.0});
            }
            const kernels::PointBatch batch(pts);
            std::vector<double> up(pts.size()), down(pts.size());
            kernels::eval_batch(kernels::CompiledPoly(lie_derivative(z.zplus, z.f)), batch, up);
            kernels::eval_batch(kernels::CompiledPoly(lie_derivative(z.zminus, z.f)), batch, down);
            const std::vector<RegionLabel> labels = classify_region_batch(z, pts);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const int lhs = tol_sign(up[i] * down[i], 0.0);
                const int rhs = sv.g * sv.t * tol_sign(pts[i].x * (pts[i].y - ly), 0.0);
                const bool crossing = labels[i] == RegionLabel::CrossingUp || labels[i] == RegionLabel::CrossingDown;
                ++checked;
                if (lhs != rhs || crossing != (rhs > 0)) {
                    diffs.push_back(fmt("%s lambda=%g at (%.6f, %.6f)", sv.str().c_str(), lambda, pts[i].x, pts[i].y));
                }
            }
        }
    }
    rep.check(diffs.empty(), fmt("region product rule on %ld sampled points, %zu violations", checked, diffs.size()),
              diffs);
}

void check_fold_fold(Reporter& rep, int& known)
{
    std::vector<std::string> diffs;
    int counts[4] = {0, 0, 0, 0};
    for (const SignVector& sv : all_sign_vectors()) {
        for (int ls : {1, -1}) {
            const double lambda = 0.1 * ls;
            const PSVF z = unfolded_form(sv, lambda);
            const Point3 p = fold_fold_point(sv, lambda);
            const ContactClass up = classify_contact(z.zplus, z.f, p, Side::Upper);
            const ContactClass down = classify_contact(z.zminus, z.f, p, Side::Lower);
            const FoldFoldType type = fold_fold_type(sv, lambda);
            ++counts[static_cast<int>(type)];
            const bool uv = type == FoldFoldType::VisibleVisible || type == FoldFoldType::VisibleInvisible;
            const bool lv = type == FoldFoldType::VisibleVisible || type == FoldFoldType::InvisibleVisible;
            if (!up.is_fold() || !down.is_fold() || (up.kind == ContactKind::FoldVisible) != uv ||
                (down.kind == ContactKind::FoldVisible) != lv) {
                diffs.push_back(fmt("%s sign(lambda)=%+d: contact %s/%s vs %s", sv.str().c_str(), ls,
                                    up.str().c_str(), down.str().c_str(), std::string(fold_fold_name(type)).c_str()));
            }
        }
    }
    rep.check(diffs.empty(), "fold-fold type agrees with contact classification on 64 cells", diffs);
    rep.check(counts[0] == 16 && counts[1] == 16 && counts[2] == 16 && counts[3] == 16,
              fmt("fold-fold type counts VV/VI/IV/II: %d/%d/%d/%d", counts[0], counts[1], counts[2], counts[3]));

    const TableCrossCheck cc = cross_check_table();
    known = static_cast<int>(cc.discrepancies.size());
    bool expected = cc.discrepancies.size() == 1 && cc.discrepancies[0].bullet == 4 && cc.discrepancies[0].clause == 2;
    // The misprinted clause leaves exactly the II cells with ag < 0, mt > 0, lambda t > 0 uncovered.
    for (const auto& [sv, ls] : cc.uncovered) {
        expected = expected && sv.a * sv.g < 0 && sv.m * sv.t > 0 && ls * sv.t > 0;
    }
    expected = expected && cc.uncovered.size() == 8;
    std::vector<std::string> notes;
    for (const TableClause& c : cc.discrepancies) {
        notes.push_back(fmt("bullet %d clause %d (ag %+d, mt %+d, lambda t %+d) disagrees", c.bullet, c.clause, c.ag,
                            c.mt, c.lt));
    }
    rep.check(expected, fmt("published table: %zu discrepant clause(s), %zu uncovered cells", cc.discrepancies.size(),
                            cc.uncovered.size()),
              notes);
}

void check_unfolding(Reporter& rep)
{
    std::vector<std::string> diffs;
    for (const SignVector& sv : all_sign_vectors()) {
        const BifurcationReport r = scan(sv, kDefaultScanEpsilon, kDefaultScanPoints);
        bool ok = true;
        double prev = 1e300;
        for (std::size_t i = 0; i < r.records.size() / 2; ++i) {
            const double d = norm(r.records[i].singular_point - Point3{0, 0, 0});
            ok = ok && d < prev;
            prev = d;
        }
        const UnfoldingRecord& mid = r.records[r.records.size() / 2];
        const PSVF z0 = unfolded_form(sv, 0.0);
        const ContactClass up = classify_contact(z0.zplus, z0.f, mid.singular_point, Side::Upper);
        const ContactClass down = classify_contact(z0.zminus, z0.f, mid.singular_point, Side::Lower);
        ok = ok && mid.cusp_fold && mid.lambda == 0.0 && up.kind == ContactKind::Cusp && down.is_fold();
        if (!ok) diffs.push_back(sv.str());
    }
    rep.check(diffs.empty(), "unfolding scan collapses to a cusp-fold at lambda = 0 for all 32 forms", diffs);
}

} // namespace

VerifyReport run_verification(std::uint64_t seed)
{
    VerifyReport report;
    report.lines.push_back(fmt("seed %llu", static_cast<unsigned long long>(seed)));
    Reporter rep(report);
    int distinct = 0;
    int known = 0;
    check_distinct(rep, distinct);
    check_lie_identities(rep);
    check_numeric_signatures(rep);
    check_product_rule(rep, seed);
    check_fold_fold(rep, known);
    check_unfolding(rep);
    report.summary = fmt("%d/32 distinct; table cross-check: %d known discrepancy (fold-fold table bullet 4, clause 2)",
                         distinct, known);
    if (!report.ok) report.summary = "verification FAILED; " + report.summary;
    return report;
}

} // namespace cuspfold
