#include <array>
#include <cmath>
#include <stdexcept>

#include "geodev/energies.hpp"
#include "geodev/errors.hpp"

namespace geodev {

double duffing_hamiltonian(const Vector& x, double stiffness, double cubic_stiffness) {
    const double x1 = x[0];
    const double x2 = x[1];
    return 0.5 * x2 * x2 + 0.5 * stiffness * x1 * x1 + 0.25 * cubic_stiffness * x1 * x1 * x1 * x1;
}

DriftConstraintEnergy::DriftConstraintEnergy(double stiffness, double cubic_stiffness,
                                             double sigma, double sharpness,
                                             double initial_energy)
    : k_(stiffness), alpha_(cubic_stiffness), sigma_(sigma), beta_(sharpness),
      h0_(initial_energy) {
    if (!(sigma_ >= 0.0)) throw std::invalid_argument("noise intensity must be nonnegative");
    if (!(beta_ > 0.0)) throw std::invalid_argument("constraint sharpness must be positive");
}

double DriftConstraintEnergy::hamiltonian(const Vector& x) const {
    return duffing_hamiltonian(x, k_, alpha_);
}

double DriftConstraintEnergy::mean_energy(double t) const {
    return h0_ + 0.5 * sigma_ * sigma_ * t;
}

EnergyDerivatives DriftConstraintEnergy::evaluate(const Vector& x, double t, int order) const {
    if (x.size() != 2) throw std::invalid_argument("Duffing state must be two-dimensional");

    const double gap = hamiltonian(x) - mean_energy(t);  // V_t - Z_t
    const double exponent = beta_ * gap * gap;
    if (exponent > kMaxExponent) throw EnergyOverflow(exponent);

    EnergyDerivatives out;
    out.value = std::expm1(exponent);
    if (order < 1) return out;

    const double e = std::exp(exponent);
    const double x1 = x[0];
    // Derivatives of V; the only nonzero third derivative is d3V/dx1^3.
    const std::array<double, 2> dv{k_ * x1 + alpha_ * x1 * x1 * x1, x[1]};
    const std::array<std::array<double, 2>, 2> d2v{{{k_ + 3.0 * alpha_ * x1 * x1, 0.0},
                                                    {0.0, 1.0}}};
    auto d3v = [&](int k, int i, int j) { return (k == 0 && i == 0 && j == 0) ? 6.0 * alpha_ * x1 : 0.0; };

    const double two_b = 2.0 * beta_;
    const double two_b_gap = two_b * gap;

    out.gradient.resize(2);
    for (int j = 0; j < 2; ++j) out.gradient[j] = two_b_gap * e * dv[j];
    if (order < 2) return out;

    out.hessian.resize(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = i; j < 2; ++j) {
            out.hessian(i, j) = two_b * e * dv[i] * dv[j] +
                                two_b_gap * two_b_gap * e * dv[i] * dv[j] +
                                two_b_gap * e * d2v[i][j];
            out.hessian(j, i) = out.hessian(i, j);
        }
    }
    if (order < 3) return out;

    const double b2 = beta_ * beta_;
    out.thirds = Tensor3(2);
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                const double a_term = two_b * two_b * gap * e * dv[k] * dv[j] * dv[i] +
                                      two_b * e * dv[i] * d2v[k][j] +
                                      two_b * e * dv[j] * d2v[k][i];
                const double b_term = 8.0 * b2 * gap * e * dv[i] * dv[j] * dv[k] +
                                      two_b_gap * two_b_gap * two_b_gap * e * dv[i] * dv[j] * dv[k] +
                                      4.0 * b2 * gap * gap * e * dv[j] * d2v[i][k] +
                                      4.0 * b2 * gap * gap * e * dv[i] * d2v[j][k];
                const double c_term = two_b * e * d2v[i][j] * dv[k] +
                                      two_b_gap * two_b_gap * e * d2v[i][j] * dv[k] +
                                      two_b_gap * e * d3v(k, i, j);
                out.thirds(k, i, j) = a_term + b_term + c_term;
            }
        }
    }
    return out;
}

EnergyDerivatives drift_energy_derivatives(const DriftConstraintEnergy& model, const Vector& x,
                                           double t) {
    return model.evaluate(x, t, 3);
}

}  // namespace geodev
