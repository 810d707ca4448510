#pragma once

#include <vector>

#include "geodev/energy_model.hpp"
#include "geodev/tensor.hpp"

namespace geodev {

struct MetricOptions {
    // Smallest admissible eigenvalue of the regularized metric.
    double pd_floor = 1e-10;
    // Clamp eigenvalues at pd_floor instead of throwing NonPositiveDefinite.
    bool clamp_eigenvalues = false;
    // Relative step for the Hessian finite-difference fallback.
    double fd_scale = 1e-5;
};

// Riemannian metric g = Hess(E)/2 + upsilon*I at one point, with everything
// derived from it that the developed integrators need.
struct MetricState {
    int dim = 0;
    Matrix g;
    Matrix g_inv;
    Matrix g_inv_sqrt;  // unique symmetric positive-definite root of g_inv
    Tensor3 gamma;      // gamma(k, i, j) = Christoffel symbol Gamma^k_{ij}
};

MetricState metric_from_energy(const EnergyModel& model, const Vector& x, double t,
                               double upsilon, const MetricOptions& options = {});

// dg(i, j, k) = d g_ij / d x_k. The upsilon*I term does not contribute.
Tensor3 derivative_of_metric(const EnergyModel& model, const Vector& x, double t,
                             const MetricOptions& options = {});

// V diag(lambda^-1/2) V^T from the eigendecomposition g = V diag(lambda) V^T.
Matrix symmetric_inverse_sqrt(const Matrix& g, const MetricOptions& options = {});

// Levi-Civita connection from the inverse metric and metric derivatives.
// Symmetric in the lower indices bit-for-bit.
Tensor3 christoffel_symbols(const Matrix& g_inv, const Tensor3& dg);

// (grad_X Y)^k = X^i d_i Y^k + X^i Y^j Gamma^k_ij, with jacobian(k, i) = d_i Y^k.
// Only meaningful inside the cut locus of the base point; not checked.
Vector covariant_derivative(const Tensor3& gamma, const Vector& X, const Vector& Y,
                            const Matrix& jacobian);

// out^i = sum_{k,l} M_kl Gamma^i_kl
Vector contract_connection(const Matrix& M, const Tensor3& gamma);

struct GeodesicSample {
    double t = 0.0;
    Vector x;
    Vector v;
};

// Classical RK4 on x'' = -Gamma(x)(x', x') for a time-independent metric.
// The last step is shortened so the trajectory ends exactly at t_span.
std::vector<GeodesicSample> geodesic_trajectory(const EnergyModel& model, const Vector& x0,
                                                const Vector& v0, double t_span, double dt,
                                                double upsilon,
                                                const MetricOptions& options = {});

// g_ij v^i v^j
double metric_speed_squared(const Matrix& g, const Vector& v);

}  // namespace geodev
