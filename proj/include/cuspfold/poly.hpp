#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace cuspfold {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Point3, Point3) = default;

    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

using Vec3 = Point3;

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

enum class Var : int { X = 0, Y = 1, Z = 2 };

using Exponent = std::array<std::uint32_t, 3>;

// Sparse polynomial in (x, y, z) with real coefficients. Zero coefficients are
// never stored, so structural equality is polynomial equality.
class Poly3 {
public:
    using TermMap = std::map<Exponent, double>;

    Poly3() = default;
    explicit Poly3(double constant);
    explicit Poly3(TermMap terms);

    static Poly3 var(Var v);
    static Poly3 x() { return var(Var::X); }
    static Poly3 y() { return var(Var::Y); }
    static Poly3 z() { return var(Var::Z); }
    static Poly3 monomial(Exponent e, double coef);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    double coef(Exponent e) const;
    int degree() const;

    double eval(Point3 q) const;
    Vec3 gradient(Point3 q) const;

    Poly3 partial(Var v) const;

    // Substitute polynomials for the three variables.
    Poly3 compose(const Poly3& px, const Poly3& py, const Poly3& pz) const;

    // Coefficients (ascending powers) of the restriction to an affine line
    // t -> origin + t * dir.
    std::vector<double> on_line(Point3 origin, Vec3 dir) const;

    std::string to_string() const;

    Poly3& operator+=(const Poly3& o);
    Poly3& operator-=(const Poly3& o);
    Poly3& operator*=(double s);

    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator-(Poly3 a) { return a *= -1.0; }
    friend Poly3 operator*(const Poly3& a, const Poly3& b);
    friend Poly3 operator*(double s, Poly3 a) { return a *= s; }
    friend Poly3 operator*(Poly3 a, double s) { return a *= s; }
    friend bool operator==(const Poly3&, const Poly3&) = default;

private:
    void add_term(Exponent e, double c);

    TermMap terms_;
};

Poly3 add(const Poly3& a, const Poly3& b);
Poly3 mul(const Poly3& a, const Poly3& b);
Poly3 partial(const Poly3& p, Var v);
double eval(const Poly3& p, Point3 q);

// Real roots of c[0] + c[1] t + ... + c[n] t^n on [lo, hi], sorted and
// deduplicated. Degree <= 3 uses closed forms; higher degrees are isolated
// between critical points and bisected. Throws Error("degenerate event
// function") when every coefficient is zero.
std::vector<double> roots_univariate(std::span<const double> coeffs, double lo, double hi);

double horner(std::span<const double> coeffs, double t);

} // namespace cuspfold
