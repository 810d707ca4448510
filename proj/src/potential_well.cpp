#include <cmath>
#include <stdexcept>

#include "geodev/energies.hpp"
#include "geodev/errors.hpp"

namespace geodev {

PotentialWellEnergy::PotentialWellEnergy(Vector center, Vector sharpness)
    : center_(std::move(center)), sharpness_(std::move(sharpness)) {
    if (center_.size() == 0 || center_.size() != sharpness_.size()) {
        throw std::invalid_argument("well center and sharpness must have the same nonzero size");
    }
    if ((sharpness_.array() <= 0.0).any()) {
        throw std::invalid_argument("well sharpness entries must be positive");
    }
}

// Indices in the closed forms below carry no summation except over p in the
// exponent.
EnergyDerivatives PotentialWellEnergy::evaluate(const Vector& x, double /*t*/, int order) const {
    const int n = dim();
    const Vector y = x - center_;
    const Vector& d = sharpness_;

    const double exponent = (d.array() * y.array().square()).sum();
    if (exponent > kMaxExponent) throw EnergyOverflow(exponent);
    const double e = std::exp(exponent);

    EnergyDerivatives out;
    out.value = e;
    if (order < 1) return out;

    out.gradient = 2.0 * d.cwiseProduct(y) * e;
    if (order < 2) return out;

    out.hessian.resize(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            out.hessian(i, j) = 4.0 * d[i] * d[j] * y[i] * y[j] * e;
            out.hessian(j, i) = out.hessian(i, j);
        }
        out.hessian(i, i) += 2.0 * d[i] * e;
    }
    if (order < 3) return out;

    // thirds(k, i, j) = 2 dg_ij/dx_k
    out.thirds = Tensor3(n);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double v = 8.0 * d[i] * d[j] * d[k] * y[i] * y[j] * y[k];
                if (i == k) v += 4.0 * d[i] * d[j] * y[j];
                if (j == k) v += 4.0 * d[i] * d[j] * y[i];
                if (i == j) v += 4.0 * d[j] * d[k] * y[k];
                out.thirds(k, i, j) = v * e;
            }
        }
    }
    return out;
}

EnergyDerivatives well_energy_derivatives(const PotentialWellEnergy& model, const Vector& x) {
    return model.evaluate(x, 0.0, 3);
}

}  // namespace geodev
