#include "cuspfold/psvf.hpp"

#include "cuspfold/error.hpp"

#include <cmath>
#include <fstream>

namespace cuspfold {

SignVector::SignVector(int a_, int b_, int g_, int m_, int t_) : a(a_), b(b_), g(g_), m(m_), t(t_)
{
    for (int s : {a, b, g, m, t}) {
        if (s != 1 && s != -1) {
            throw Error("sign vector entries must be +1 or -1");
        }
    }
}

SignVector SignVector::parse(std::string_view text)
{
    std::vector<int> signs;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '+') {
            signs.push_back(1);
        } else if (c == '-') {
            signs.push_back(-1);
        } else if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < text.size() &&
                   static_cast<unsigned char>(text[i + 1]) == 0x88 &&
                   static_cast<unsigned char>(text[i + 2]) == 0x92) {
            signs.push_back(-1);
            i += 2;
        } else if (c == '(' || c == ')' || c == ',' || c == ' ') {
            continue;
        } else {
            throw Error("invalid sign vector '" + std::string(text) + "'");
        }
    }
    if (signs.size() != 5) {
        throw Error("invalid sign vector '" + std::string(text) + "': expected 5 signs");
    }
    return {signs[0], signs[1], signs[2], signs[3], signs[4]};
}

std::string SignVector::str() const
{
    std::string s;
    for (int v : {a, b, g, m, t}) s += v > 0 ? '+' : '-';
    return s;
}

std::string SignVector::type_label() const
{
    const std::string s = str();
    return "(" + s.substr(0, 3) + "," + s.substr(3) + ")";
}

std::vector<SignVector> all_sign_vectors()
{
    std::vector<SignVector> out;
    out.reserve(32);
    for (int bits = 0; bits < 32; ++bits) {
        auto sign = [bits](int k) { return (bits >> (4 - k)) & 1 ? -1 : 1; };
        out.emplace_back(sign(0), sign(1), sign(2), sign(3), sign(4));
    }
    return out;
}

WorkingBox::WorkingBox(Point3 c, double hx, double hy, double hz) : center(c), rx(hx), ry(hy), rz(hz)
{
    if (!(rx > 0.0 && ry > 0.0 && rz > 0.0)) {
        throw Error("working box half-widths must be positive");
    }
}

bool WorkingBox::contains(Point3 q, double slack) const { return excess(q) <= slack; }

double WorkingBox::excess(Point3 q) const
{
    const Point3 d = q - center;
    return std::max({std::abs(d.x) - rx, std::abs(d.y) - ry, std::abs(d.z) - rz});
}

bool PSVF::regular_on(const WorkingBox& box, int n) const
{
    if (n < 2) n = 2;
    auto grid = [&](int i, int j, int k) {
        auto coord = [n](double c, double r, int idx) { return c - r + 2.0 * r * idx / (n - 1); };
        return Point3{coord(box.center.x, box.rx, i), coord(box.center.y, box.ry, j),
                      coord(box.center.z, box.rz, k)};
    };
    const Poly3 fx = f.partial(Var::X), fy = f.partial(Var::Y), fz = f.partial(Var::Z);
    auto regular_at = [&](Point3 q) {
        return norm(Vec3{fx.eval(q), fy.eval(q), fz.eval(q)}) > 1e-9;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const Point3 p = grid(i, j, k);
                const double fp = f.eval(p);
                if (fp == 0.0 && !regular_at(p)) return false;
                const std::array<Point3, 3> nbrs{i + 1 < n ? grid(i + 1, j, k) : p,
                                                 j + 1 < n ? grid(i, j + 1, k) : p,
                                                 k + 1 < n ? grid(i, j, k + 1) : p};
                for (const Point3& q : nbrs) {
                    const double fq = f.eval(q);
                    if (!((fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0))) continue;
                    Point3 lo = p, hi = q;
                    for (int it = 0; it < 60; ++it) {
                        const Point3 mid = 0.5 * (lo + hi);
                        if ((f.eval(mid) < 0.0) == (fp < 0.0)) lo = mid;
                        else hi = mid;
                    }
                    if (!regular_at(0.5 * (lo + hi))) return false;
                }
            }
        }
    }
    return true;
}

PSVF canonical_form(const SignVector& sv)
{
    PSVF z;
    z.f = Poly3::z();
    z.zplus = {sv.a * Poly3::y(), Poly3(static_cast<double>(sv.b)), sv.g * Poly3::x()};
    z.zminus = {Poly3(), Poly3(static_cast<double>(sv.m)), sv.t * Poly3::y()};
    return z;
}

PSVF unfolded_form(const SignVector& sv, double lambda, double epsilon)
{
    if (!(std::abs(lambda) < epsilon)) {
        throw Error("lambda outside unfolding window");
    }
    PSVF z = canonical_form(sv);
    z.zminus.fz -= Poly3(lambda);
    return z;
}

PSVF push_forward(const PSVF& z, const std::array<Poly3, 3>& forward, const std::array<Poly3, 3>& inverse)
{
    auto back = [&](const Poly3& p) { return p.compose(inverse[0], inverse[1], inverse[2]); };
    auto push = [&](const SmoothField3& v) {
        std::array<Poly3, 3> out;
        const std::array<const Poly3*, 3> comp{&v.fx, &v.fy, &v.fz};
        for (int i = 0; i < 3; ++i) {
            Poly3 acc;
            for (int j = 0; j < 3; ++j) {
                acc += forward[i].partial(static_cast<Var>(j)) * *comp[j];
            }
            out[i] = back(acc);
        }
        return SmoothField3{out[0], out[1], out[2]};
    };
    return PSVF{back(z.f), push(z.zplus), push(z.zminus)};
}

void to_json(nlohmann::json& j, const Poly3& p)
{
    j = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        j.push_back({{"exp", {e[0], e[1], e[2]}}, {"coef", c}});
    }
}

void from_json(const nlohmann::json& j, Poly3& p)
{
    if (!j.is_array()) {
        throw Error("polynomial must be a list of {exp, coef} records");
    }
    Poly3::TermMap terms;
    for (const auto& rec : j) {
        const auto& e = rec.at("exp");
        if (!e.is_array() || e.size() != 3) {
            throw Error("polynomial exponent must be a triple");
        }
        for (const auto& v : e) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                throw Error("polynomial exponents must be non-negative integers");
            }
        }
        const Exponent ex{e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>(), e[2].get<std::uint32_t>()};
        terms[ex] += rec.at("coef").get<double>();
    }
    p = Poly3(std::move(terms));
}

namespace {

nlohmann::json field_json(const SmoothField3& v)
{
    return nlohmann::json::array({v.fx, v.fy, v.fz});
}

SmoothField3 field_from(const nlohmann::json& j)
{
    if (!j.is_array() || j.size() != 3) {
        throw Error("vector field must be a list of three polynomials");
    }
    return {j[0].get<Poly3>(), j[1].get<Poly3>(), j[2].get<Poly3>()};
}

} // namespace

void to_json(nlohmann::json& j, const PSVF& z)
{
    j = {{"f", z.f}, {"zplus", field_json(z.zplus)}, {"zminus", field_json(z.zminus)}};
}

void from_json(const nlohmann::json& j, PSVF& z)
{
    try {
        z.f = j.at("f").get<Poly3>();
        z.zplus = field_from(j.at("zplus"));
        z.zminus = field_from(j.at("zminus"));
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("malformed PSVF document: ") + e.what());
    }
}

PSVF load_psvf(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot open '" + path + "'");
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path + "' is not valid JSON: " + e.what());
    }
    return j.get<PSVF>();
}

} // namespace cuspfold
