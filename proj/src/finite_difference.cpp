#include "geodev/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace geodev {

namespace {

// Derivative of f along coordinate k by a central stencil. R must support
// R + R, R - R and R * double (double, Vector, Matrix all do).
template <class R, class F>
R directional(const F& f, const Vector& x, int k, double scale, Stencil stencil) {
    const double raw = fd_step(x, k, scale);
    // Make the step exactly representable relative to x_k.
    volatile double shifted = x[k] + raw;
    const double h = shifted - x[k];

    auto at = [&](double offset) {
        Vector y = x;
        y[k] += offset;
        return R(f(y));
    };

    if (stencil == Stencil::Second) {
        return R((at(h) - at(-h)) * (1.0 / (2.0 * h)));
    }
    return R((at(-2.0 * h) - at(2.0 * h) + (at(h) - at(-h)) * 8.0) * (1.0 / (12.0 * h)));
}

}  // namespace

double fd_step(const Vector& x, int k, double scale) {
    return scale * std::max(1.0, std::abs(x[k]));
}

Vector central_gradient(const ScalarField& f, const Vector& x, double scale, Stencil stencil) {
    Vector g(x.size());
    for (int k = 0; k < x.size(); ++k) g[k] = directional<double>(f, x, k, scale, stencil);
    return g;
}

Matrix central_jacobian(const VectorField& f, const Vector& x, double scale, Stencil stencil) {
    Matrix jac;
    for (int k = 0; k < x.size(); ++k) {
        Vector col = directional<Vector>(f, x, k, scale, stencil);
        if (k == 0) jac.resize(col.size(), x.size());
        jac.col(k) = col;
    }
    return jac;
}

Tensor3 central_matrix_derivative(const MatrixField& f, const Vector& x, double scale,
                                  Stencil stencil) {
    const int n = static_cast<int>(x.size());
    Tensor3 out(n);
    for (int k = 0; k < n; ++k) {
        Matrix slice = directional<Matrix>(f, x, k, scale, stencil);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) out(i, j, k) = slice(i, j);
    }
    return out;
}

double relative_error(const Eigen::Ref<const Matrix>& a, const Eigen::Ref<const Matrix>& b) {
    const double scale = b.cwiseAbs().maxCoeff();
    const double diff = (a - b).cwiseAbs().maxCoeff();
    if (scale == 0.0) return diff;
    return diff / scale;
}

double relative_error(const Tensor3& a, const Tensor3& b) {
    const double scale = b.max_abs();
    const double diff = (a - b).max_abs();
    if (scale == 0.0) return diff;
    return diff / scale;
}

FiniteDifferenceModel::FiniteDifferenceModel(EnergyFunction value_fn, int dim, double fd_scale)
    : value_fn_(std::move(value_fn)), dim_(dim), fd_scale_(fd_scale) {}

Vector FiniteDifferenceModel::fd_gradient(const Vector& x, double t) const {
    return central_gradient([&](const Vector& y) { return value_fn_(y, t); }, x, fd_scale_,
                            Stencil::Fourth);
}

Matrix FiniteDifferenceModel::fd_hessian(const Vector& x, double t) const {
    Matrix h = central_jacobian([&](const Vector& y) { return fd_gradient(y, t); }, x,
                                fd_scale_, Stencil::Fourth);
    return 0.5 * (h + h.transpose());
}

EnergyDerivatives FiniteDifferenceModel::evaluate(const Vector& x, double t, int order) const {
    EnergyDerivatives out;
    out.value = value_fn_(x, t);
    if (order >= 1) out.gradient = fd_gradient(x, t);
    if (order >= 2) out.hessian = fd_hessian(x, t);
    if (order >= 3) {
        out.thirds = central_matrix_derivative([&](const Vector& y) { return fd_hessian(y, t); },
                                               x, fd_scale_, Stencil::Fourth);
    }
    return out;
}

std::unique_ptr<EnergyModel> finite_difference_model(EnergyFunction value_fn, int dim,
                                                     double fd_scale) {
    return std::make_unique<FiniteDifferenceModel>(std::move(value_fn), dim, fd_scale);
}

}  // namespace geodev
