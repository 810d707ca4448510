#pragma once

#include "geodev/tensor.hpp"

namespace geodev {

// Value and derivatives of an energy at one state. Entries above the
// requested order are left empty (size 0).
struct EnergyDerivatives {
    double value = 0.0;
    Vector gradient;
    Matrix hessian;
    Tensor3 thirds;  // thirds(k, i, j) = d^3 E / dx_k dx_i dx_j
};

// An energy-like scalar field E(x, t) with derivatives up to third order.
//
// Implementations are immutable after construction; `evaluate` must be safe
// to call concurrently.
class EnergyModel {
public:
    virtual ~EnergyModel() = default;

    virtual int dim() const = 0;

    // Value plus derivatives up to `order` (0..3). Models without analytic
    // third derivatives may leave `thirds` empty for order 3.
    virtual EnergyDerivatives evaluate(const Vector& x, double t, int order) const = 0;

    virtual bool has_analytic_thirds() const { return true; }
    virtual bool time_dependent() const { return false; }

    double value(const Vector& x, double t = 0.0) const;
    Vector gradient(const Vector& x, double t = 0.0) const;
    Matrix hessian(const Vector& x, double t = 0.0) const;

    // Falls back to central differences of the Hessian when `evaluate` leaves
    // the thirds empty.
    Tensor3 third_derivatives(const Vector& x, double t = 0.0) const;
};

}  // namespace geodev
