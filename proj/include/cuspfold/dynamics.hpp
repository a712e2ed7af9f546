#pragma once

#include "cuspfold/psvf.hpp"
#include "cuspfold/tangency.hpp"

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace cuspfold {

enum class Regime { Upper, Lower, Sliding };

enum class EventKind {
    CrossUp,
    CrossDown,
    SlideEnter,
    SlideExit,
    TangencyHit,
    // Start point in the escaping region with an explicit escaping_choice.
    EscapeBranch,
    Stop,
};

enum class Termination { TimeLimit, EventLimit, BoxExit, Escaping, Cusp, Degenerate, Stuck };

std::string_view regime_name(Regime r);
std::string_view event_name(EventKind k);
std::string_view termination_name(Termination t);

struct Sample {
    double t;
    Point3 q;
};

struct TrajectorySegment {
    Regime regime = Regime::Upper;
    double t_start = 0.0;
    double t_end = 0.0;
    std::vector<Sample> samples;
};

struct TrajectoryEvent {
    double t;
    Point3 q;
    EventKind kind;
};

struct Trajectory {
    std::vector<TrajectorySegment> segments;
    std::vector<TrajectoryEvent> events;
    Termination termination = Termination::TimeLimit;
};

struct IntegratorOptions {
    double t_max = 10.0;
    int max_events = 64;
    double step = 1e-3;
    WorkingBox box{};
    // Zone taken from an escaping start point; unset stops with a Stop event.
    std::optional<Regime> escaping_choice;
};

// The canonical family is constant-plus-nilpotent, so its flows are
// polynomial in t.
struct ExactHint {
    SignVector sv;
    double lambda = 0.0;
};

Point3 flow_exact(const SignVector& sv, double lambda, Side side, Point3 q0, double t);

// Coefficients in t of f along the exact flow (f = z for the canonical family).
std::vector<double> exact_height_coeffs(const SignVector& sv, double lambda, Side side, Point3 q0);

// Filippov convex combination tangent to Sigma.
Vec3 sliding_field(const PSVF& z, Point3 q);

Trajectory integrate(const PSVF& z, Point3 q0, const IntegratorOptions& opts,
                     std::optional<ExactHint> exact_hint = std::nullopt);

// Largest mismatch between finite-difference velocity of the stored samples
// and the governing field of each segment.
double residual_check(const Trajectory& traj, const PSVF& z);

} // namespace cuspfold
