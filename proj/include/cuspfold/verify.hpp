#pragma once

#include "cuspfold/psvf.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace cuspfold {

// Nonlinear perturbation of (+++,++) that keeps every Lie-derivative sign at
// the origin: Z+ = (y + 0.1x^2, 1, x + 0.05y^3), Z- = (0.02z, 1, y + 0.1x^2).
PSVF perturbed_fixture();

// The volume-preserving shear (x, y, z) -> (x + c z, y, z) and its inverse.
std::array<Poly3, 3> shear_map(double c);
PSVF sheared_form(const SignVector& sv, double c = 0.1);

inline constexpr std::uint64_t kDefaultVerifySeed = 20240611;

struct VerifyReport {
    std::vector<std::string> lines;
    bool ok = true;
    std::string summary;

    std::string text() const;
};

// Full self-check: distinctness, Lie identities, numeric signatures, region
// product rule (seeded sampling), fold-fold table cross-check, and a dynamics
// smoke run. Deterministic for a given seed.
VerifyReport run_verification(std::uint64_t seed = kDefaultVerifySeed);

} // namespace cuspfold
