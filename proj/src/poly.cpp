#include "cuspfold/poly.hpp"

#include "cuspfold/error.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <numbers>

namespace cuspfold {

Poly3::Poly3(double constant)
{
    add_term({0, 0, 0}, constant);
}

Poly3::Poly3(TermMap terms)
{
    for (const auto& [e, c] : terms) {
        add_term(e, c);
    }
}

Poly3 Poly3::var(Var v)
{
    Exponent e{0, 0, 0};
    e[static_cast<int>(v)] = 1;
    return monomial(e, 1.0);
}

Poly3 Poly3::monomial(Exponent e, double coef)
{
    Poly3 p;
    p.add_term(e, coef);
    return p;
}

void Poly3::add_term(Exponent e, double c)
{
    if (c == 0.0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0.0) {
            terms_.erase(it);
        }
    }
}

double Poly3::coef(Exponent e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
}

int Poly3::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, static_cast<int>(e[0] + e[1] + e[2]));
    }
    return d;
}

// Term order and multiplication order here are mirrored by the batch kernels,
// which must reproduce this value bit for bit.
double Poly3::eval(Point3 q) const
{
    double acc = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (std::uint32_t i = 0; i < e[0]; ++i) term *= q.x;
        for (std::uint32_t i = 0; i < e[1]; ++i) term *= q.y;
        for (std::uint32_t i = 0; i < e[2]; ++i) term *= q.z;
        acc += term;
    }
    return acc;
}

Vec3 Poly3::gradient(Point3 q) const
{
    return {partial(Var::X).eval(q), partial(Var::Y).eval(q), partial(Var::Z).eval(q)};
}

Poly3 Poly3::partial(Var v) const
{
    const int k = static_cast<int>(v);
    Poly3 out;
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0) {
            continue;
        }
        Exponent d = e;
        d[k] -= 1;
        out.add_term(d, c * static_cast<double>(e[k]));
    }
    return out;
}

Poly3 Poly3::compose(const Poly3& px, const Poly3& py, const Poly3& pz) const
{
    const std::array<const Poly3*, 3> subs{&px, &py, &pz};
    std::array<std::vector<Poly3>, 3> powers;
    for (int k = 0; k < 3; ++k) {
        powers[k].push_back(Poly3(1.0));
    }
    auto power = [&](int k, std::uint32_t n) -> const Poly3& {
        while (powers[k].size() <= n) {
            powers[k].push_back(powers[k].back() * *subs[k]);
        }
        return powers[k][n];
    };

    Poly3 out;
    for (const auto& [e, c] : terms_) {
        out += c * (power(0, e[0]) * power(1, e[1]) * power(2, e[2]));
    }
    return out;
}

std::vector<double> Poly3::on_line(Point3 origin, Vec3 dir) const
{
    const Poly3 t = Poly3::x();
    const Poly3 restricted =
        compose(Poly3(origin.x) + dir.x * t, Poly3(origin.y) + dir.y * t, Poly3(origin.z) + dir.z * t);
    std::vector<double> coeffs(static_cast<std::size_t>(std::max(restricted.degree(), 0)) + 1, 0.0);
    for (const auto& [e, c] : restricted.terms()) {
        coeffs[e[0]] = c;
    }
    return coeffs;
}

namespace {

std::string format_double(double v)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string Poly3::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    static constexpr const char* names[3] = {"x", "y", "z"};
    std::string out;
    // Highest total degree first reads more naturally.
    std::vector<std::pair<Exponent, double>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return a.first[0] + a.first[1] + a.first[2] > b.first[0] + b.first[1] + b.first[2];
    });
    bool first = true;
    for (const auto& [e, c] : ordered) {
        const bool constant = e[0] + e[1] + e[2] == 0;
        double mag = c;
        if (first) {
            if (c < 0) {
                out += "-";
                mag = -c;
            }
        } else {
            out += c < 0 ? " - " : " + ";
            mag = std::abs(c);
        }
        first = false;
        std::string mono;
        for (int k = 0; k < 3; ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += names[k];
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        if (constant) {
            out += format_double(mag);
        } else if (mag == 1.0) {
            out += mono;
        } else {
            out += format_double(mag) + "*" + mono;
        }
    }
    return out;
}

Poly3& Poly3::operator+=(const Poly3& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, c);
    }
    return *this;
}

Poly3& Poly3::operator-=(const Poly3& o)
{
    for (const auto& [e, c] : o.terms_) {
        add_term(e, -c);
    }
    return *this;
}

Poly3& Poly3::operator*=(double s)
{
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
        it->second *= s;
        if (it->second == 0.0) {
            it = terms_.erase(it);
        } else {
            ++it;
        }
    }
    return *this;
}

Poly3 operator*(const Poly3& a, const Poly3& b)
{
    Poly3 out;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
        }
    }
    return out;
}

Poly3 add(const Poly3& a, const Poly3& b) { return a + b; }
Poly3 mul(const Poly3& a, const Poly3& b) { return a * b; }
Poly3 partial(const Poly3& p, Var v) { return p.partial(v); }
double eval(const Poly3& p, Point3 q) { return p.eval(q); }

// ---------------------------------------------------------------------------
// Univariate roots

double horner(std::span<const double> coeffs, double t)
{
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * t + *it;
    }
    return acc;
}

namespace {

using Coeffs = std::vector<double>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kDedup = 1e-10;

Coeffs derivative(std::span<const double> c)
{
    Coeffs d;
    for (std::size_t i = 1; i < c.size(); ++i) {
        d.push_back(c[i] * static_cast<double>(i));
    }
    if (d.empty()) d.push_back(0.0);
    return d;
}

// Sum of |c_i| |t|^i: the rounding scale of evaluating c at t.
double magnitude(std::span<const double> c, double t)
{
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        acc = acc * std::abs(t) + std::abs(*it);
    }
    return acc;
}

void quadratic_candidates(double c0, double c1, double c2, Coeffs& out)
{
    const double disc = c1 * c1 - 4.0 * c0 * c2;
    const double scale = c1 * c1 + std::abs(4.0 * c0 * c2);
    if (disc < 0.0) {
        if (disc >= -1e-14 * scale) {
            out.push_back(-c1 / (2.0 * c2));
        }
        return;
    }
    const double q = -0.5 * (c1 + std::copysign(std::sqrt(disc), c1));
    if (q == 0.0) {
        out.push_back(0.0);
        return;
    }
    out.push_back(q / c2);
    out.push_back(c0 / q);
}

void cubic_candidates(double c0, double c1, double c2, double c3, Coeffs& out)
{
    const double a = c2 / c3;
    const double b = c1 / c3;
    const double c = c0 / c3;
    const double shift = -a / 3.0;
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;

    const double pscale = 1.0 + a * a + std::abs(b);
    const double qscale = 1.0 + std::abs(a * a * a) + std::abs(a * b) + std::abs(c);
    if (std::abs(p) <= 1e-12 * pscale && std::abs(q) <= 1e-12 * qscale) {
        out.push_back(shift);
        return;
    }

    const double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        // Pick the non-cancelling branch, then recover the partner from u v = -p/3.
        const double w = -q / 2.0 + std::copysign(s, -q);
        const double u = std::cbrt(w);
        const double v = u != 0.0 ? -p / (3.0 * u) : 0.0;
        out.push_back(u + v + shift);
    } else {
        const double r = std::sqrt(-p / 3.0);
        double arg = (3.0 * q / (2.0 * p)) * std::sqrt(-3.0 / p);
        arg = std::clamp(arg, -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            out.push_back(2.0 * r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) + shift);
        }
    }
}

double newton(std::span<const double> c, double r)
{
    const Coeffs d = derivative(c);
    for (int it = 0; it < 8; ++it) {
        const double fv = horner(c, r);
        const double dv = horner(d, r);
        if (fv == 0.0 || dv == 0.0) break;
        const double next = r - fv / dv;
        if (!(std::abs(horner(c, next)) <= std::abs(fv))) break;
        const double step = std::abs(next - r);
        r = next;
        if (step <= 4.0 * kEps * (1.0 + std::abs(r))) break;
    }
    return r;
}

// Clustered roots are ill-conditioned in the value of c, but become simple
// roots of a derivative; refine there when the local derivatives vanish.
double refine(std::span<const double> c, double r)
{
    const std::size_t n = c.size() - 1;
    if (n >= 2) {
        const Coeffs d1 = derivative(c);
        const double m1 = magnitude(d1, r);
        const bool flat1 = std::abs(horner(d1, r)) <= 1e-7 * m1;
        if (flat1 && n >= 3) {
            const Coeffs d2 = derivative(d1);
            const double m2 = magnitude(d2, r);
            if (std::abs(horner(d1, r)) <= 1e-9 * m1 && std::abs(horner(d2, r)) <= 1e-4 * m2) {
                const double cand = newton(d2, r);
                if (std::abs(horner(c, cand)) <= 1e3 * kEps * magnitude(c, cand)) return cand;
            }
        }
        if (flat1) {
            const double cand = newton(d1, r);
            if (std::abs(horner(c, cand)) <= 1e3 * kEps * magnitude(c, cand)) return cand;
        }
    }
    return newton(c, r);
}

double bisect(std::span<const double> c, double lo, double hi)
{
    double flo = horner(c, lo);
    for (int it = 0; it < 200 && hi - lo > 2.0 * kEps * (1.0 + std::abs(lo) + std::abs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = horner(c, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Coeffs solve(std::span<const double> c, double lo, double hi);

// Degree >= 4: split at critical points into monotone pieces.
Coeffs isolate(std::span<const double> c, double lo, double hi)
{
    const Coeffs d = derivative(c);
    Coeffs cuts{lo};
    for (double r : solve(d, lo, hi)) {
        if (r > lo && r < hi) cuts.push_back(r);
    }
    cuts.push_back(hi);

    Coeffs out;
    for (double t : cuts) {
        if (std::abs(horner(c, t)) <= 1e3 * kEps * magnitude(c, t)) out.push_back(t);
    }
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double fa = horner(c, cuts[i]);
        const double fb = horner(c, cuts[i + 1]);
        if ((fa < 0.0 && fb > 0.0) || (fa > 0.0 && fb < 0.0)) {
            out.push_back(newton(c, bisect(c, cuts[i], cuts[i + 1])));
        }
    }
    return out;
}

Coeffs solve(std::span<const double> c, double lo, double hi)
{
    const std::size_t n = c.size() - 1;
    Coeffs cand;
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        cand.push_back(-c[0] / c[1]);
    } else if (n == 2) {
        quadratic_candidates(c[0], c[1], c[2], cand);
    } else if (n == 3) {
        cubic_candidates(c[0], c[1], c[2], c[3], cand);
        // Touching roots can be lost to a discriminant of the wrong sign.
        Coeffs crit;
        const Coeffs d = derivative(c);
        quadratic_candidates(d[0], d[1], d[2], crit);
        for (double r : crit) {
            if (std::abs(horner(c, r)) <= 1e3 * kEps * magnitude(c, r)) cand.push_back(r);
        }
    } else {
        cand = isolate(c, lo, hi);
    }

    Coeffs out;
    const double slack = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    for (double r : cand) {
        if (!std::isfinite(r)) continue;
        if (n <= 3) r = refine(c, r);
        if (r < lo - slack || r > hi + slack) continue;
        out.push_back(std::clamp(r, lo, hi));
    }
    std::sort(out.begin(), out.end());

    Coeffs merged;
    for (double r : out) {
        if (!merged.empty() && r - merged.back() <= kDedup) {
            if (std::abs(horner(c, r)) < std::abs(horner(c, merged.back()))) merged.back() = r;
            continue;
        }
        merged.push_back(r);
    }
    return merged;
}

} // namespace

std::vector<double> roots_univariate(std::span<const double> coeffs, double lo, double hi)
{
    std::size_t n = coeffs.size();
    while (n > 0 && coeffs[n - 1] == 0.0) {
        --n;
    }
    if (n == 0) {
        throw Error("degenerate event function");
    }
    if (lo > hi) {
        std::swap(lo, hi);
    }
    return solve(coeffs.first(n), lo, hi);
}

} // namespace cuspfold
