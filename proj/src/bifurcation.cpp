#include "cuspfold/bifurcation.hpp"

#include "cuspfold/error.hpp"

#include <algorithm>
#include <cmath>

namespace cuspfold {

std::string_view fold_fold_name(FoldFoldType t)
{
    switch (t) {
    case FoldFoldType::VisibleVisible: return "visible-visible";
    case FoldFoldType::VisibleInvisible: return "visible-invisible";
    case FoldFoldType::InvisibleVisible: return "invisible-visible";
    case FoldFoldType::InvisibleInvisible: return "invisible-invisible";
    }
    return "invisible-invisible";
}

namespace {

void check_lambda(double lambda, double epsilon)
{
    if (lambda == 0.0) {
        throw Error("cusp-fold, not fold-fold");
    }
    if (!(std::abs(lambda) < epsilon)) {
        throw Error("lambda outside unfolding window");
    }
}

FoldFoldType combine(bool upper_visible, bool lower_visible)
{
    if (upper_visible) return lower_visible ? FoldFoldType::VisibleVisible : FoldFoldType::VisibleInvisible;
    return lower_visible ? FoldFoldType::InvisibleVisible : FoldFoldType::InvisibleInvisible;
}

} // namespace

Point3 fold_fold_point(const SignVector& sv, double lambda, double epsilon)
{
    check_lambda(lambda, epsilon);
    return {0.0, sv.t * lambda, 0.0};
}

FoldFoldType fold_fold_type(const SignVector& sv, double lambda, double epsilon)
{
    check_lambda(lambda, epsilon);
    // Z+^2 f = a g y evaluated at y = t lambda; Z-^2 f = m t.
    const double upper_second = sv.a * sv.g * (sv.t * lambda);
    const bool upper_visible = upper_second > 0.0;
    const bool lower_visible = sv.m * sv.t < 0;
    return combine(upper_visible, lower_visible);
}

UnfoldingRecord unfold_record(const SignVector& sv, double lambda, double epsilon)
{
    UnfoldingRecord rec;
    rec.lambda = lambda;
    rec.lower_tangency_y = sv.t * lambda + 0.0;
    rec.layout = sector_layout(sv, lambda, epsilon);
    if (lambda == 0.0) {
        rec.cusp_fold = true;
        rec.singular_point = {0.0, 0.0, 0.0};
    } else {
        rec.singular_point = fold_fold_point(sv, lambda, epsilon);
        rec.type = fold_fold_type(sv, lambda, epsilon);
    }
    return rec;
}

BifurcationReport scan(const SignVector& sv, double epsilon, int n)
{
    if (!(epsilon > 0.0)) {
        throw Error("scan epsilon must be positive");
    }
    if (n < 3 || n % 2 == 0) {
        throw Error("scan needs an odd number of points >= 3");
    }
    BifurcationReport report;
    report.sv = sv;
    const int half = n / 2;
    // The scan grid includes its endpoints, so the window must admit +-epsilon.
    const double window = std::max(kDefaultUnfoldingRadius, std::nextafter(epsilon, 2.0 * epsilon + 1.0));
    for (int i = 0; i < n; ++i) {
        // Symmetric construction keeps the middle value exactly 0 and the grid
        // exactly antisymmetric.
        const int k = i - half;
        const double lambda = epsilon * static_cast<double>(k) / static_cast<double>(half);
        report.lambda_grid.push_back(lambda);

        report.records.push_back(unfold_record(sv, lambda, window));
    }
    return report;
}

const std::vector<TableClause>& published_table()
{
    using T = FoldFoldType;
    static const std::vector<TableClause> table{
        {T::VisibleVisible, 1, 1, -1, -1, -1},     {T::VisibleVisible, 1, 2, +1, -1, +1},
        {T::VisibleInvisible, 2, 1, -1, +1, -1},   {T::VisibleInvisible, 2, 2, +1, +1, +1},
        {T::InvisibleVisible, 3, 1, +1, -1, -1},   {T::InvisibleVisible, 3, 2, -1, -1, +1},
        {T::InvisibleInvisible, 4, 1, +1, +1, -1}, {T::InvisibleInvisible, 4, 2, -1, -1, +1},
    };
    return table;
}

TableCrossCheck cross_check_table()
{
    TableCrossCheck out;
    const auto& table = published_table();
    std::vector<bool> clause_ok(table.size(), true);
    struct Cell {
        SignVector sv;
        int lambda_sign;
        FoldFoldType type;
    };
    std::vector<Cell> cells;
    for (const SignVector& sv : all_sign_vectors()) {
        for (int ls : {1, -1}) {
            cells.push_back({sv, ls, fold_fold_type(sv, 0.1 * ls)});
        }
    }
    out.cells = static_cast<int>(cells.size());

    auto matches = [](const TableClause& c, const Cell& cell) {
        return c.ag == cell.sv.a * cell.sv.g && c.mt == cell.sv.m * cell.sv.t && c.lt == cell.lambda_sign * cell.sv.t;
    };
    for (std::size_t k = 0; k < table.size(); ++k) {
        for (const Cell& cell : cells) {
            if (matches(table[k], cell) && cell.type != table[k].type) {
                clause_ok[k] = false;
            }
        }
        if (!clause_ok[k]) out.discrepancies.push_back(table[k]);
    }
    for (const Cell& cell : cells) {
        bool covered = false;
        for (std::size_t k = 0; k < table.size(); ++k) {
            covered = covered || (clause_ok[k] && matches(table[k], cell));
        }
        if (!covered) out.uncovered.emplace_back(cell.sv, cell.lambda_sign);
    }
    return out;
}

void to_json(nlohmann::json& j, const UnfoldingRecord& rec)
{
    nlohmann::json layout;
    for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
            const std::string key = std::string(sx > 0 ? "+" : "-") + (sy > 0 ? "+" : "-");
            layout[key] = std::string(region_name(rec.layout.at(sx, sy)));
        }
    }
    j = {
        {"lambda", rec.lambda},
        {"cusp_fold", rec.cusp_fold},
        {"singular_point", {rec.singular_point.x, rec.singular_point.y, rec.singular_point.z}},
        {"lower_tangency_y", rec.lower_tangency_y},
        {"layout", layout},
    };
    j["type"] = rec.cusp_fold ? nlohmann::json("cusp-fold") : nlohmann::json(std::string(fold_fold_name(rec.type)));
}

void to_json(nlohmann::json& j, const BifurcationReport& r)
{
    nlohmann::json records = nlohmann::json::array();
    for (const UnfoldingRecord& rec : r.records) records.push_back(rec);
    j = {{"sv", r.sv.str()}, {"type_label", r.sv.type_label()}, {"lambda_grid", r.lambda_grid}, {"records", records}};
}

} // namespace cuspfold
