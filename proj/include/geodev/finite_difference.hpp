#pragma once

#include <functional>
#include <memory>

#include "geodev/energy_model.hpp"

namespace geodev {

enum class Stencil {
    Second,  // (f(x+h) - f(x-h)) / 2h
    Fourth,  // five-point, O(h^4)
};

// Step along coordinate k: scale * max(1, |x_k|).
double fd_step(const Vector& x, int k, double scale);

using ScalarField = std::function<double(const Vector&)>;
using VectorField = std::function<Vector(const Vector&)>;
using MatrixField = std::function<Matrix(const Vector&)>;

Vector central_gradient(const ScalarField& f, const Vector& x, double scale,
                        Stencil stencil = Stencil::Second);

// J(i, k) = d f_i / d x_k
Matrix central_jacobian(const VectorField& f, const Vector& x, double scale,
                        Stencil stencil = Stencil::Second);

// D(i, j, k) = d M_ij / d x_k
Tensor3 central_matrix_derivative(const MatrixField& f, const Vector& x, double scale,
                                  Stencil stencil = Stencil::Second);

// max |a - b| / max |reference|, with reference = b.
double relative_error(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b);
double relative_error(const Tensor3& a, const Tensor3& b);

using EnergyFunction = std::function<double(const Vector&, double)>;

// EnergyModel whose derivatives are nested fourth-order central differences
// of a value function. Meant as a cross-check oracle, not for production runs.
class FiniteDifferenceModel final : public EnergyModel {
public:
    FiniteDifferenceModel(EnergyFunction value_fn, int dim, double fd_scale = 1e-4);

    int dim() const override { return dim_; }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override;
    bool has_analytic_thirds() const override { return false; }
    bool time_dependent() const override { return true; }

private:
    Vector fd_gradient(const Vector& x, double t) const;
    Matrix fd_hessian(const Vector& x, double t) const;

    EnergyFunction value_fn_;
    int dim_;
    double fd_scale_;
};

std::unique_ptr<EnergyModel> finite_difference_model(EnergyFunction value_fn, int dim,
                                                     double fd_scale = 1e-4);

}  // namespace geodev
