#include <stdexcept>

#include "geodev/energies.hpp"

namespace geodev {

QuadraticEnergy::QuadraticEnergy(Matrix q) : q_(std::move(q)) {
    if (q_.rows() == 0 || q_.rows() != q_.cols()) {
        throw std::invalid_argument("quadratic form must be a nonempty square matrix");
    }
    q_ = 0.5 * (q_ + q_.transpose()).eval();
}

QuadraticEnergy QuadraticEnergy::identity(int dim) {
    return QuadraticEnergy(Matrix::Identity(dim, dim));
}

EnergyDerivatives QuadraticEnergy::evaluate(const Vector& x, double /*t*/, int order) const {
    EnergyDerivatives out;
    out.value = x.dot(q_ * x);
    if (order >= 1) out.gradient = 2.0 * (q_ * x);
    if (order >= 2) out.hessian = 2.0 * q_;
    if (order >= 3) out.thirds = Tensor3(dim());
    return out;
}

}  // namespace geodev
