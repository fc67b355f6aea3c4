#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace qslmq {

// Base of all library errors. kind() is a stable machine-readable tag; sweep
// rows and CLI diagnostics use it so failure categories survive serialization.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// A physical parameter or an input state violates its invariants.
struct ValidationError : Error {
    explicit ValidationError(const std::string& w) : Error("ValidationError", w) {}
};

// Bad config file or CLI override.
struct ConfigError : Error {
    explicit ConfigError(const std::string& w) : Error("ConfigError", w) {}
};

// Characteristic cubic has (nearly) coincident roots; the three-exponential
// amplitude formula is unreliable there.
struct NearDegenerateRoots : Error {
    explicit NearDegenerateRoots(const std::string& w) : Error("NearDegenerateRoots", w) {}
};

// Rates requested at a zero of the survival amplitude.
struct AmplitudeZero : Error {
    explicit AmplitudeZero(const std::string& w) : Error("AmplitudeZero", w) {}
};

// Population never moved; speed-limit ratio is undefined.
struct NoEvolution : Error {
    explicit NoEvolution(const std::string& w) : Error("NoEvolution", w) {}
};

// Adaptive quadrature stalled before reaching its tolerance.
struct QuadratureFailure : Error {
    explicit QuadratureFailure(const std::string& w) : Error("QuadratureFailure", w) {}
};

// Volterra corrector iteration diverged at the configured step.
struct StepTooLarge : Error {
    explicit StepTooLarge(const std::string& w) : Error("StepTooLarge", w) {}
};

// Critical-driving bisection bracket does not straddle a transition.
struct BracketInvalid : Error {
    explicit BracketInvalid(const std::string& w) : Error("BracketInvalid", w) {}
};

} // namespace qslmq
