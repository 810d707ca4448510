#pragma once

#include "geodev/energy_model.hpp"

namespace geodev {

// Exponents above this trip EnergyOverflow; exp overflows double near 709.
inline constexpr double kMaxExponent = 700.0;

// E(x) = exp(sum_p d_p (x - lambda)_p^2): a smooth well centred on lambda
// whose sharpness grows with d.
class PotentialWellEnergy final : public EnergyModel {
public:
    PotentialWellEnergy(Vector center, Vector sharpness);

    int dim() const override { return static_cast<int>(center_.size()); }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override;

    const Vector& center() const { return center_; }
    const Vector& sharpness() const { return sharpness_; }

private:
    Vector center_;
    Vector sharpness_;
};

// Duffing oscillator phase-space energy constraint
//   E_t(x) = exp(beta (V(x) - Z_t)^2) - 1,
//   V(x)   = x2^2/2 + k x1^2/2 + alpha x1^4/4,
//   Z_t    = H0 + sigma^2 t / 2,
// which vanishes on the shell of states whose energy follows the mean-energy
// law of the noisy oscillator.
class DriftConstraintEnergy final : public EnergyModel {
public:
    DriftConstraintEnergy(double stiffness, double cubic_stiffness, double sigma,
                          double sharpness, double initial_energy);

    int dim() const override { return 2; }
    bool time_dependent() const override { return true; }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override;

    double hamiltonian(const Vector& x) const;
    double mean_energy(double t) const;

    double stiffness() const { return k_; }
    double cubic_stiffness() const { return alpha_; }
    double sigma() const { return sigma_; }
    double sharpness() const { return beta_; }
    double initial_energy() const { return h0_; }

private:
    double k_;
    double alpha_;
    double sigma_;
    double beta_;
    double h0_;
};

// Duffing Hamiltonian x2^2/2 + k x1^2/2 + alpha x1^4/4.
double duffing_hamiltonian(const Vector& x, double stiffness, double cubic_stiffness);

// f(x) = -a T1 - T2 + a + e with
//   T1 = exp(-b sqrt(|x|^2 / n)),  T2 = exp(sum_i cos(c x_i) / n).
// Derivatives are singular at the origin and refused within origin_eps.
class AckleyEnergy final : public EnergyModel {
public:
    explicit AckleyEnergy(int dim, double a = 20.0, double b = 0.2,
                          double c = 2.0 * 3.14159265358979323846, double origin_eps = 1e-8);

    int dim() const override { return dim_; }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override;

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double origin_eps() const { return origin_eps_; }

private:
    int dim_;
    double a_;
    double b_;
    double c_;
    double origin_eps_;
};

// E(x) = x^T Q x; constant metric Q + upsilon*I and zero connection.
class QuadraticEnergy final : public EnergyModel {
public:
    explicit QuadraticEnergy(Matrix q);
    static QuadraticEnergy identity(int dim);

    int dim() const override { return static_cast<int>(q_.rows()); }
    EnergyDerivatives evaluate(const Vector& x, double t, int order) const override;

private:
    Matrix q_;
};

EnergyDerivatives well_energy_derivatives(const PotentialWellEnergy& model, const Vector& x);
EnergyDerivatives drift_energy_derivatives(const DriftConstraintEnergy& model, const Vector& x,
                                           double t);
EnergyDerivatives ackley_derivatives(const AckleyEnergy& model, const Vector& x);

}  // namespace geodev
