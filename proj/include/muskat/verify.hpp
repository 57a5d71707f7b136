#pragma once

#include "muskat/operators.hpp"

#include <functional>
#include <string>
#include <vector>

namespace muskat {

struct VerifyCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string detail;
};

using MinusCoefficientBuilder = std::function<CoefficientField(const PeriodicFn&, const FluidParams&, const StripGrid&)>;
using PlusCoefficientBuilder =
    std::function<CoefficientField(const PeriodicFn&, const PeriodicFn&, const FluidParams&, const StripGrid&)>;

struct VerifyOptions {
    bool quick = false;
    // Coefficient builders under test; replaced by mutation tests.
    MinusCoefficientBuilder coeffs_minus = coeffs_A_minus;
    PlusCoefficientBuilder coeffs_plus = coeffs_A_plus;
};

std::vector<VerifyCheck> run_verify(const VerifyOptions& options);

// Individual checks, exposed for targeted testing.
VerifyCheck verify_harmonic_pullback(const VerifyOptions& options);
VerifyCheck verify_harmonic_pullback_plus(const VerifyOptions& options);
VerifyCheck verify_manufactured_solution(const VerifyOptions& options);
VerifyCheck verify_flat_two_layer(const VerifyOptions& options);
std::vector<VerifyCheck> verify_frechet(const VerifyOptions& options);
VerifyCheck verify_linearized_potentials(const VerifyOptions& options);
VerifyCheck verify_symbol_oracle(const VerifyOptions& options);
VerifyCheck verify_symbol_report(const VerifyOptions& options);
VerifyCheck verify_complementing(const VerifyOptions& options);

}  // namespace muskat
