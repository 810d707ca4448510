#pragma once

#include <stdexcept>
#include <string>

namespace geodev {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Regularized metric has an eigenvalue at or below the positive-definiteness floor.
class NonPositiveDefinite : public Error {
public:
    NonPositiveDefinite(double min_eigenvalue, double floor);
    double min_eigenvalue() const { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

// An exp(.) energy would be evaluated with an exponent above the overflow guard.
class EnergyOverflow : public Error {
public:
    explicit EnergyOverflow(double exponent);
    double exponent() const { return exponent_; }

private:
    double exponent_;
};

// Derivatives of the Ackley function requested too close to the origin.
class OriginSingularity : public Error {
public:
    explicit OriginSingularity(double radius);
};

// An integrator step produced a non-finite state.
class Diverged : public Error {
public:
    using Error::Error;
};

class AllDiverged : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace geodev
