#include "cuspfold/dynamics.hpp"

#include "cuspfold/error.hpp"
#include "cuspfold/regions.hpp"

#include <cmath>
#include <limits>

namespace cuspfold {

std::string_view regime_name(Regime r)
{
    switch (r) {
    case Regime::Upper: return "upper";
    case Regime::Lower: return "lower";
    case Regime::Sliding: return "sliding";
    }
    return "upper";
}

std::string_view event_name(EventKind k)
{
    switch (k) {
    case EventKind::CrossUp: return "cross-up";
    case EventKind::CrossDown: return "cross-down";
    case EventKind::SlideEnter: return "slide-enter";
    case EventKind::SlideExit: return "slide-exit";
    case EventKind::TangencyHit: return "tangency-hit";
    case EventKind::EscapeBranch: return "escape-branch";
    case EventKind::Stop: return "stop";
    }
    return "stop";
}

std::string_view termination_name(Termination t)
{
    switch (t) {
    case Termination::TimeLimit: return "time-limit";
    case Termination::EventLimit: return "event-limit";
    case Termination::BoxExit: return "box-exit";
    case Termination::Escaping: return "escaping";
    case Termination::Cusp: return "cusp";
    case Termination::Degenerate: return "degenerate";
    case Termination::Stuck: return "stuck";
    }
    return "time-limit";
}

Point3 flow_exact(const SignVector& sv, double lambda, Side side, Point3 q0, double t)
{
    const double t2 = t * t;
    const double t3 = t2 * t;
    if (side == Side::Upper) {
        return {q0.x + sv.a * (q0.y * t + sv.b * t2 / 2.0), q0.y + sv.b * t,
                q0.z + sv.g * (q0.x * t + sv.a * (q0.y * t2 / 2.0 + sv.b * t3 / 6.0))};
    }
    return {q0.x, q0.y + sv.m * t, q0.z + sv.t * (q0.y * t + sv.m * t2 / 2.0) - lambda * t};
}

std::vector<double> exact_height_coeffs(const SignVector& sv, double lambda, Side side, Point3 q0)
{
    if (side == Side::Upper) {
        return {q0.z, sv.g * q0.x, sv.g * sv.a * q0.y / 2.0, sv.g * sv.a * sv.b / 6.0};
    }
    return {q0.z, sv.t * q0.y - lambda, sv.t * sv.m / 2.0};
}

Vec3 sliding_field(const PSVF& z, Point3 q)
{
    const double a = lie_derivative(z.zplus, z.f).eval(q);
    const double b = lie_derivative(z.zminus, z.f).eval(q);
    const double denom = b - a;
    if (std::abs(denom) < 1e-12) {
        throw Error("sliding combination degenerate");
    }
    const double s = b / denom;
    return s * z.zplus.eval(q) + (1.0 - s) * z.zminus.eval(q);
}

namespace {

constexpr double kOnSigma = 1e-9;
constexpr double kStartSkip = 1e-9;

struct Decision {
    std::optional<Regime> next;
    EventKind kind = EventKind::Stop;
    Termination stop = Termination::Stuck;
    bool tangent = false;
};

enum class SegmentEnd { Sigma, TimeLimit, BoxExit, SlideExit };

struct SegmentResult {
    SegmentEnd end = SegmentEnd::TimeLimit;
    double t = 0.0;
    Point3 q;
    Point3 ahead;  // slide exit: first point past the boundary
};

class Integrator {
public:
    Integrator(const PSVF& z, const IntegratorOptions& opts, std::optional<ExactHint> hint)
        : z_(z),
          opts_(opts),
          hint_(hint),
          up_(lie_derivative(z.zplus, z.f)),
          down_(lie_derivative(z.zminus, z.f)),
          grad_{z.f.partial(Var::X), z.f.partial(Var::Y), z.f.partial(Var::Z)}
    {
        if (!(opts.t_max > 0.0) || !(opts.step > 0.0) || opts.max_events <= 0) {
            throw Error("integrator options must be positive");
        }
        if (hint_) {
            const PSVF expected = unfolded_form(hint_->sv, hint_->lambda, std::numeric_limits<double>::infinity());
            if (!(expected == z)) {
                throw Error("exact hint does not match field");
            }
        }
    }

    Trajectory run(Point3 q0)
    {
        if (!q0.finite()) throw Error("step produces non-finite values");
        if (!opts_.box.contains(q0)) throw Error("initial point outside working box");

        double t = 0.0;
        Point3 q = q0;
        Regime regime;
        const double f0 = z_.f.eval(q0);
        if (std::abs(f0) < kOnSigma) {
            q = project(q0);
            const Decision d = resolve(q);
            if (d.next) {
                regime = *d.next;
                if (d.tangent) log(0.0, q, EventKind::TangencyHit);
            } else if (d.stop == Termination::Escaping && opts_.escaping_choice) {
                regime = *opts_.escaping_choice;
                log(0.0, q, EventKind::EscapeBranch);
            } else {
                log(0.0, q, d.tangent ? EventKind::TangencyHit : EventKind::Stop);
                traj_.termination = d.stop;
                return std::move(traj_);
            }
        } else {
            regime = f0 > 0 ? Regime::Upper : Regime::Lower;
        }

        while (true) {
            if (event_limit()) return std::move(traj_);
            if (t >= opts_.t_max) {
                traj_.termination = Termination::TimeLimit;
                return std::move(traj_);
            }
            const SegmentResult res = regime == Regime::Sliding ? slide(t, q) : zone(regime, t, q);
            t = res.t;
            q = res.q;
            switch (res.end) {
            case SegmentEnd::TimeLimit: traj_.termination = Termination::TimeLimit; return std::move(traj_);
            case SegmentEnd::BoxExit: traj_.termination = Termination::BoxExit; return std::move(traj_);
            case SegmentEnd::Sigma: {
                const Decision d = resolve(q);
                if (!d.next) {
                    log(t, q, d.tangent ? EventKind::TangencyHit : EventKind::Stop);
                    traj_.termination = d.stop;
                    return std::move(traj_);
                }
                log(t, q, d.tangent || *d.next == regime ? EventKind::TangencyHit : d.kind);
                regime = *d.next;
                break;
            }
            case SegmentEnd::SlideExit: {
                const RegionLabel ahead = label_from_signs(tol_sign(up_.eval(res.ahead), 0.0),
                                                           tol_sign(down_.eval(res.ahead), 0.0));
                log(t, q, EventKind::SlideExit);
                if (ahead == RegionLabel::CrossingUp) {
                    regime = Regime::Upper;
                } else if (ahead == RegionLabel::CrossingDown) {
                    regime = Regime::Lower;
                } else {
                    traj_.termination = ahead == RegionLabel::Escaping ? Termination::Escaping : Termination::Stuck;
                    return std::move(traj_);
                }
                break;
            }
            }
        }
    }

private:
    bool event_limit()
    {
        if (static_cast<int>(traj_.events.size()) >= opts_.max_events) {
            traj_.termination = Termination::EventLimit;
            return true;
        }
        return false;
    }

    void log(double t, Point3 q, EventKind kind)
    {
        if (!traj_.events.empty() && !(t > traj_.events.back().t)) {
            // Two decisions at one instant collapse into the later one.
            traj_.events.back() = {traj_.events.back().t, q, kind};
            return;
        }
        traj_.events.push_back({t, q, kind});
    }

    Vec3 grad_f(Point3 q) const { return {grad_[0].eval(q), grad_[1].eval(q), grad_[2].eval(q)}; }

    Point3 project(Point3 q) const
    {
        for (int it = 0; it < 20; ++it) {
            const double fv = z_.f.eval(q);
            if (fv == 0.0) break;
            const Vec3 g = grad_f(q);
            const double gg = dot(g, g);
            if (gg == 0.0) break;
            const Point3 next = q - (fv / gg) * g;
            if (!(std::abs(z_.f.eval(next)) < std::abs(fv))) break;
            q = next;
        }
        return q;
    }

    Vec3 velocity(Regime r, Point3 q) const
    {
        switch (r) {
        case Regime::Upper: return z_.zplus.eval(q);
        case Regime::Lower: return z_.zminus.eval(q);
        case Regime::Sliding: {
            const double a = up_.eval(q);
            const double b = down_.eval(q);
            if (std::abs(b - a) < 1e-12) throw Error("sliding combination degenerate");
            const double s = b / (b - a);
            return s * z_.zplus.eval(q) + (1.0 - s) * z_.zminus.eval(q);
        }
        }
        return {};
    }

    Point3 rk4(Regime r, Point3 q, double h) const
    {
        const Vec3 k1 = velocity(r, q);
        const Vec3 k2 = velocity(r, q + (0.5 * h) * k1);
        const Vec3 k3 = velocity(r, q + (0.5 * h) * k2);
        const Vec3 k4 = velocity(r, q + h * k3);
        Point3 out = q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (r == Regime::Sliding) out = project(out);
        if (!out.finite()) throw Error("step produces non-finite values");
        return out;
    }

    // Smallest tau in (0, h] with pred(advance(tau)) false, given pred(0) true
    // and pred(h) false.
    template <class Advance, class Pred>
    static double first_failure(Advance&& advance, Pred&& pred, double h)
    {
        double lo = 0.0, hi = h;
        while (hi - lo > 1e-12 * std::max(1.0, h)) {
            const double mid = 0.5 * (lo + hi);
            if (pred(advance(mid))) lo = mid;
            else hi = mid;
        }
        return hi;
    }

    static void append_final(std::vector<Sample>& samples, Sample s, double step)
    {
        if (samples.size() >= 2 && s.t - samples.back().t < 0.5 * step) {
            samples.pop_back();
        }
        samples.push_back(s);
    }

    void close_segment(Regime r, std::vector<Sample> samples)
    {
        if (samples.size() < 2 || !(samples.back().t > samples.front().t)) return;
        TrajectorySegment seg;
        seg.regime = r;
        seg.t_start = samples.front().t;
        seg.t_end = samples.back().t;
        seg.samples = std::move(samples);
        traj_.segments.push_back(std::move(seg));
    }

    bool inside(Point3 q) const { return opts_.box.contains(q); }

    SegmentResult zone(Regime r, double t0, Point3 q0)
    {
        const Side side = r == Regime::Upper ? Side::Upper : Side::Lower;
        const double sgn = r == Regime::Upper ? 1.0 : -1.0;
        const double h = opts_.step;
        const double remaining = opts_.t_max - t0;

        double limit = remaining;
        bool hits_sigma = false;
        if (hint_) {
            const std::vector<double> c = exact_height_coeffs(hint_->sv, hint_->lambda, side, q0);
            try {
                for (double root : roots_univariate(c, 0.0, remaining)) {
                    if (root > kStartSkip) {
                        limit = root;
                        hits_sigma = true;
                        break;
                    }
                }
            } catch (const Error&) {
                // f identically zero along the flow: no crossing.
            }
        }
        auto exact_at = [&](double tau) { return flow_exact(hint_->sv, hint_->lambda, side, q0, tau); };

        std::vector<Sample> samples{{t0, q0}};
        Point3 q = q0;
        double tau = 0.0;
        while (true) {
            double hk = h;
            const bool last = tau + hk > limit - 0.5 * h;
            if (last) hk = limit - tau;
            const Point3 base = q;
            const Point3 next = hint_ ? exact_at(tau + hk) : rk4(r, base, hk);
            if (!next.finite()) throw Error("step produces non-finite values");
            auto advance = [&](double s) { return hint_ ? exact_at(tau + s) : rk4(r, base, s); };

            if (!hint_ && sgn * z_.f.eval(next) < 0.0) {
                const double s = first_failure(advance, [&](Point3 p) { return sgn * z_.f.eval(p) >= 0.0; }, hk);
                const Point3 hit = project(advance(s));
                if (!inside(hit)) return box_exit(r, samples, tau, base, advance, s);
                append_final(samples, {t0 + tau + s, hit}, h);
                close_segment(r, std::move(samples));
                return {SegmentEnd::Sigma, t0 + tau + s, hit, hit};
            }
            if (!inside(next)) return box_exit(r, samples, tau, base, advance, hk);

            tau += hk;
            q = next;
            if (last) {
                if (hits_sigma) {
                    q = project(q);
                    append_final(samples, {t0 + tau, q}, h);
                    close_segment(r, std::move(samples));
                    return {SegmentEnd::Sigma, t0 + tau, q, q};
                }
                append_final(samples, {t0 + tau, q}, h);
                close_segment(r, std::move(samples));
                return {SegmentEnd::TimeLimit, t0 + tau, q, q};
            }
            samples.push_back({t0 + tau, q});
        }
    }

    template <class Advance>
    SegmentResult box_exit(Regime r, std::vector<Sample>& samples, double tau, Point3 base, Advance&& advance,
                           double hk)
    {
        const double s = first_failure(advance, [&](Point3 p) { return inside(p); }, hk);
        // Keep the last point inside the box.
        double keep = s;
        Point3 last = advance(keep);
        for (int i = 0; i < 8 && !inside(last); ++i) {
            keep = std::max(0.0, keep - 1e-12 * std::max(1.0, hk) * (1 << i));
            last = advance(keep);
        }
        if (!inside(last)) {
            keep = 0.0;
            last = base;
        }
        const double t_end = samples.front().t + tau + keep;
        if (keep > 0.0) append_final(samples, {t_end, last}, opts_.step);
        close_segment(r, std::move(samples));
        return {SegmentEnd::BoxExit, t_end, last, last};
    }

    double sliding_margin(Point3 q) const { return std::min(-up_.eval(q), down_.eval(q)); }

    SegmentResult slide(double t0, Point3 q0)
    {
        const double h = opts_.step;
        const double remaining = opts_.t_max - t0;
        std::vector<Sample> samples{{t0, q0}};
        Point3 q = q0;
        double tau = 0.0;
        while (true) {
            double hk = h;
            const bool last = tau + hk > remaining - 0.5 * h;
            if (last) hk = remaining - tau;
            const Point3 base = q;
            auto advance = [&](double s) { return rk4(Regime::Sliding, base, s); };
            const Point3 next = advance(hk);

            if (sliding_margin(next) <= 0.0) {
                const double s = first_failure(advance, [&](Point3 p) { return sliding_margin(p) > 0.0; }, hk);
                const Point3 exit = project(advance(s));
                if (!inside(exit)) return box_exit(Regime::Sliding, samples, tau, base, advance, s);
                append_final(samples, {t0 + tau + s, exit}, h);
                close_segment(Regime::Sliding, std::move(samples));
                return {SegmentEnd::SlideExit, t0 + tau + s, exit, next};
            }
            if (!inside(next)) return box_exit(Regime::Sliding, samples, tau, base, advance, hk);

            tau += hk;
            q = next;
            if (last) {
                append_final(samples, {t0 + tau, q}, h);
                close_segment(Regime::Sliding, std::move(samples));
                return {SegmentEnd::TimeLimit, t0 + tau, q, q};
            }
            samples.push_back({t0 + tau, q});
        }
    }

    // Continuation at a point of Sigma. Tangent fields are replaced by the
    // side their fold orbit occupies: a visible Z+ fold or an invisible Z- fold
    // counts as pointing up.
    Decision resolve(Point3 q) const
    {
        Decision d;
        int sa = tol_sign(up_.eval(q), kLieTol);
        int sb = tol_sign(down_.eval(q), kLieTol);
        auto tangent_sign = [&](const SmoothField3& v, Side side, int& sign) -> bool {
            const ContactClass c = classify_contact(v, z_.f, q, side);
            d.tangent = true;
            if (c.is_fold()) {
                const bool visible = c.kind == ContactKind::FoldVisible;
                sign = (side == Side::Upper) == visible ? 1 : -1;
                return true;
            }
            if (c.kind == ContactKind::Transversal) {
                sign = c.sign;
                return true;
            }
            d.stop = c.kind == ContactKind::Cusp ? Termination::Cusp : Termination::Degenerate;
            return false;
        };
        if (sa == 0 && !tangent_sign(z_.zplus, Side::Upper, sa)) return d;
        if (sb == 0 && !tangent_sign(z_.zminus, Side::Lower, sb)) return d;

        switch (label_from_signs(sa, sb)) {
        case RegionLabel::CrossingUp: d.next = Regime::Upper; d.kind = EventKind::CrossUp; break;
        case RegionLabel::CrossingDown: d.next = Regime::Lower; d.kind = EventKind::CrossDown; break;
        case RegionLabel::Sliding: d.next = Regime::Sliding; d.kind = EventKind::SlideEnter; break;
        case RegionLabel::Escaping: d.stop = Termination::Escaping; d.kind = EventKind::Stop; break;
        case RegionLabel::Boundary: d.stop = Termination::Stuck; break;
        }
        return d;
    }

    const PSVF& z_;
    IntegratorOptions opts_;
    std::optional<ExactHint> hint_;
    Poly3 up_, down_;
    std::array<Poly3, 3> grad_;
    Trajectory traj_;
};

} // namespace

Trajectory integrate(const PSVF& z, Point3 q0, const IntegratorOptions& opts, std::optional<ExactHint> exact_hint)
{
    return Integrator(z, opts, exact_hint).run(q0);
}

namespace {

// Derivative at s[i] of the Lagrange interpolant through s[lo..hi].
Vec3 lagrange_derivative(const std::vector<Sample>& s, std::size_t lo, std::size_t hi, std::size_t i)
{
    Vec3 d{0, 0, 0};
    for (std::size_t j = lo; j <= hi; ++j) {
        double w = 0.0;
        if (j == i) {
            for (std::size_t k = lo; k <= hi; ++k) {
                if (k != i) w += 1.0 / (s[i].t - s[k].t);
            }
        } else {
            w = 1.0 / (s[j].t - s[i].t);
            for (std::size_t k = lo; k <= hi; ++k) {
                if (k != i && k != j) w *= (s[i].t - s[k].t) / (s[j].t - s[k].t);
            }
        }
        d = d + w * s[j].q;
    }
    return d;
}

} // namespace

double residual_check(const Trajectory& traj, const PSVF& z)
{
    double worst = 0.0;
    for (const TrajectorySegment& seg : traj.segments) {
        const auto& s = seg.samples;
        if (s.size() < 3) continue;
        // Five-point stencils (three near the ends) keep the truncation error
        // far below the integration error being measured.
        const std::size_t half = s.size() >= 5 ? 2 : 1;
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::size_t lo = std::min(i >= half ? i - half : 0, s.size() - 1 - 2 * half);
            const std::size_t hi = lo + 2 * half;
            bool distinct = true;
            for (std::size_t k = lo + 1; k <= hi; ++k) distinct = distinct && s[k].t > s[k - 1].t;
            if (!distinct) continue;
            const Vec3 fd = lagrange_derivative(s, lo, hi, i);
            Vec3 v;
            switch (seg.regime) {
            case Regime::Upper: v = z.zplus.eval(s[i].q); break;
            case Regime::Lower: v = z.zminus.eval(s[i].q); break;
            case Regime::Sliding:
                try {
                    v = sliding_field(z, s[i].q);
                } catch (const Error&) {
                    continue;
                }
                break;
            }
            worst = std::max(worst, norm(fd - v));
        }
    }
    return worst;
}

} // namespace cuspfold
