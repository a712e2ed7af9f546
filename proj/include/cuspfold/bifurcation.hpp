#pragma once

#include "cuspfold/psvf.hpp"
#include "cuspfold/regions.hpp"

#include <json.hpp>

#include <string_view>
#include <vector>

namespace cuspfold {

// Upper-field visibility first.
enum class FoldFoldType { VisibleVisible, VisibleInvisible, InvisibleVisible, InvisibleInvisible };

std::string_view fold_fold_name(FoldFoldType t);

// (0, t * lambda, 0). Throws Error("cusp-fold, not fold-fold") at lambda = 0.
Point3 fold_fold_point(const SignVector& sv, double lambda, double epsilon = kDefaultUnfoldingRadius);

// From Lie-derivative signs at the fold-fold point: the upper fold is visible
// iff a g t lambda > 0, the lower one iff m t < 0.
FoldFoldType fold_fold_type(const SignVector& sv, double lambda, double epsilon = kDefaultUnfoldingRadius);

struct UnfoldingRecord {
    double lambda = 0.0;
    bool cusp_fold = false;           // lambda == 0
    Point3 singular_point;            // origin when cusp_fold
    FoldFoldType type = FoldFoldType::InvisibleInvisible;  // meaningless when cusp_fold
    SectorLayout layout;
    double lower_tangency_y = 0.0;    // S- of the unfolded field is y = t * lambda
};

UnfoldingRecord unfold_record(const SignVector& sv, double lambda, double epsilon = kDefaultUnfoldingRadius);

struct BifurcationReport {
    SignVector sv;
    std::vector<double> lambda_grid;
    std::vector<UnfoldingRecord> records;
};

inline constexpr double kDefaultScanEpsilon = 0.2;
inline constexpr int kDefaultScanPoints = 9;

// Uniform grid of n (odd, >= 3) values over [-epsilon, epsilon]; the middle
// one is exactly zero.
BifurcationReport scan(const SignVector& sv, double epsilon = kDefaultScanEpsilon, int n = kDefaultScanPoints);

// One clause of the published visibility table: the signs of (a g), (m t)
// and (lambda t) that put the fold-fold point in `type`.
struct TableClause {
    FoldFoldType type;
    int bullet;  // 1-based
    int clause;  // 1-based within the bullet
    int ag, mt, lt;
};

// The table as printed, including its duplicated fourth-bullet clause.
const std::vector<TableClause>& published_table();

struct TableCrossCheck {
    // Clauses whose matching cells disagree with the first-principles type.
    std::vector<TableClause> discrepancies;
    // (sv, sign lambda) cells not matched by any correct clause.
    std::vector<std::pair<SignVector, int>> uncovered;
    int cells = 0;
};

TableCrossCheck cross_check_table();

// Layout keys are "<sign x><sign(y - t lambda)>", e.g. "+-".
void to_json(nlohmann::json& j, const UnfoldingRecord& rec);
void to_json(nlohmann::json& j, const BifurcationReport& r);

} // namespace cuspfold
