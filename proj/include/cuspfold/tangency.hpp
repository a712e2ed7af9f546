#pragma once

#include "cuspfold/psvf.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cuspfold {

// Zone of a field: Upper is Z+ on f >= 0, Lower is Z- on f <= 0.
enum class Side { Upper, Lower };

// Target zone of the cusp orbit leaving the singular point.
enum class Zone { SigmaPlus, SigmaMinus };

enum class ContactKind { Transversal, FoldVisible, FoldInvisible, Cusp, Degenerate };

struct ContactClass {
    ContactKind kind = ContactKind::Degenerate;
    int sign = 0;                    // Transversal: sign of the first Lie derivative
    Zone arrival = Zone::SigmaPlus;  // Cusp only
    int order = 0;                   // Degenerate: first non-vanishing order (>= 4), 0 if all vanish

    static ContactClass transversal(int s) { return {ContactKind::Transversal, s, Zone::SigmaPlus, 1}; }
    static ContactClass fold(bool visible)
    {
        return {visible ? ContactKind::FoldVisible : ContactKind::FoldInvisible, 0, Zone::SigmaPlus, 2};
    }
    static ContactClass cusp(Zone z) { return {ContactKind::Cusp, 0, z, 3}; }
    static ContactClass degenerate(int order) { return {ContactKind::Degenerate, 0, Zone::SigmaPlus, order}; }

    bool is_fold() const { return kind == ContactKind::FoldVisible || kind == ContactKind::FoldInvisible; }
    std::string str() const;

    friend bool operator==(const ContactClass&, const ContactClass&) = default;
};

inline constexpr double kLieTol = 1e-9;
inline constexpr int kMaxChainDepth = 6;

// V g = <grad g, V>.
Poly3 lie_derivative(const SmoothField3& v, const Poly3& g);

// [V g, V^2 g, ..., V^k g]; throws for k outside [1, kMaxChainDepth].
std::vector<Poly3> lie_chain(const SmoothField3& v, const Poly3& g, int k);

ContactClass classify_contact(const SmoothField3& v, const Poly3& f, Point3 q, Side side);

// The integral curve of Z+ of the canonical form through the origin.
Point3 cusp_orbit(const SignVector& sv, double t);

struct Line3 {
    Point3 point;
    Vec3 direction;  // unit; first nonzero component positive
};

// Tangency set of the given side when both f and its first Lie derivative are
// affine; nullopt ("non-linear") otherwise, or when the two planes are parallel.
std::optional<Line3> tangency_line(const PSVF& z, Side side);

} // namespace cuspfold
