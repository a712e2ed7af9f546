#pragma once

#include "cuspfold/psvf.hpp"
#include "cuspfold/tangency.hpp"

#include <json.hpp>

#include <span>
#include <utility>
#include <vector>

namespace cuspfold {

enum class Branch { PositiveY, NegativeY };
enum class FoldType { Visible, Invisible };

// Weak-equivalence invariant of a cusp-fold singularity.
//
// cusp_arrival      zone entered by the Z+ orbit through the cusp (sign of abg)
// visible_branch    half of S+ carrying visible folds of Z+ (sign of ag)
// zplus_layout      side of S+ (toward +x) where Z+f > 0 (sign of g)
// sminus_type       fold type of Z- along S- (invisible iff mt > 0)
// zminus_layout     side of S- (toward +y) where Z-f > 0 (sign of t)
//
// For general fields "+x" and "+y" are the ambient axes projected onto the
// tangent plane of Sigma at the singular point.
struct CuspFoldSignature {
    Zone cusp_arrival = Zone::SigmaPlus;
    Branch visible_branch = Branch::PositiveY;
    int zplus_layout = 1;
    FoldType sminus_type = FoldType::Invisible;
    int zminus_layout = 1;

    friend bool operator==(const CuspFoldSignature&, const CuspFoldSignature&) = default;
};

enum SignatureField : unsigned {
    kCuspArrival = 1u << 0,
    kVisibleBranch = 1u << 1,
    kZplusLayout = 1u << 2,
    kSminusType = 1u << 3,
    kZminusLayout = 1u << 4,
    kAllFields = 0x1Fu,
};

CuspFoldSignature signature_of_sign_vector(const SignVector& sv);

// Inverse of signature_of_sign_vector.
SignVector sign_vector_of_signature(const CuspFoldSignature& s);

// Numeric extraction by probing Sigma around p. Throws Error("not a cusp-fold
// configuration") or Error("probe radius unresolvable").
CuspFoldSignature signature_of_psvf(const PSVF& z, Point3 p, double probe_radius);

bool weak_equivalent(const CuspFoldSignature& s1, const CuspFoldSignature& s2);
bool equal_on(const CuspFoldSignature& s1, const CuspFoldSignature& s2, unsigned fields);

struct DistinctnessReport {
    int count_distinct = 0;
    std::vector<std::pair<SignVector, SignVector>> collisions;
};

DistinctnessReport verify_theorem_one();
// Distinctness over a subset of forms, comparing only the selected fields.
DistinctnessReport count_distinct_signatures(std::span<const SignVector> forms, unsigned fields = kAllFields);

void to_json(nlohmann::json& j, const CuspFoldSignature& s);
void from_json(const nlohmann::json& j, CuspFoldSignature& s);

} // namespace cuspfold
