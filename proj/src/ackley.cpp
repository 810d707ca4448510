#include <cmath>
#include <numbers>
#include <stdexcept>

#include "geodev/energies.hpp"
#include "geodev/errors.hpp"

namespace geodev {

AckleyEnergy::AckleyEnergy(int dim, double a, double b, double c, double origin_eps)
    : dim_(dim), a_(a), b_(b), c_(c), origin_eps_(origin_eps) {
    if (dim_ < 1) throw std::invalid_argument("Ackley dimension must be positive");
    if (!(origin_eps_ > 0.0)) throw std::invalid_argument("origin_eps must be positive");
}

EnergyDerivatives AckleyEnergy::evaluate(const Vector& x, double /*t*/, int order) const {
    const int n = dim_;
    if (x.size() != n) throw std::invalid_argument("state dimension does not match Ackley");

    const double inv_n = 1.0 / n;
    const double radius = x.norm();
    const double t1 = std::exp(-b_ * std::sqrt(x.squaredNorm() * inv_n));
    const double t2 = std::exp(x.array().unaryExpr([&](double v) { return std::cos(c_ * v); }).sum() *
                               inv_n);

    EnergyDerivatives out;
    // Grouped so that f(0) is exactly zero.
    out.value = a_ * (1.0 - t1) + (std::numbers::e - t2);
    if (order < 1) return out;
    if (radius < origin_eps_) throw OriginSingularity(radius);

    // T1 derivatives, written with bs = b / sqrt(n) and rho = |x|.
    const double bs = b_ / std::sqrt(static_cast<double>(n));
    const double r1 = 1.0 / radius;
    const double r3 = r1 * r1 * r1;
    const double r5 = r3 * r1 * r1;

    Vector dt1 = -bs * r1 * t1 * x;
    Vector sin_cx(n);
    Vector cos_cx(n);
    for (int i = 0; i < n; ++i) {
        sin_cx[i] = std::sin(c_ * x[i]);
        cos_cx[i] = std::cos(c_ * x[i]);
    }
    Vector dt2 = -(c_ * inv_n) * t2 * sin_cx;

    out.gradient = -a_ * dt1 - dt2;
    if (order < 2) return out;

    Matrix d2t1(n, n);
    Matrix d2t2(n, n);
    // Upper triangle, mirrored so the Hessian is exactly symmetric.
    for (int j = 0; j < n; ++j) {
        for (int k = j; k < n; ++k) {
            const double delta = j == k ? 1.0 : 0.0;
            d2t1(j, k) = bs * x[j] * x[k] * r3 * t1 - bs * r1 * delta * t1 - bs * r1 * x[j] * dt1[k];
            d2t2(j, k) = -(c_ * c_ * inv_n) * delta * cos_cx[j] * t2 -
                         (c_ * inv_n) * sin_cx[j] * dt2[k];
            d2t1(k, j) = d2t1(j, k);
            d2t2(k, j) = d2t2(j, k);
        }
    }
    out.hessian = -a_ * d2t1 - d2t2;
    if (order < 3) return out;

    const double c2n = c_ * c_ * inv_n;
    const double c3n = c2n * c_;
    const double cn = c_ * inv_n;
    out.thirds = Tensor3(n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const double djk = j == k ? 1.0 : 0.0;
            for (int m = 0; m < n; ++m) {
                const double djm = j == m ? 1.0 : 0.0;
                const double dkm = k == m ? 1.0 : 0.0;
                const double third_t1 =
                    bs * x[k] * r3 * t1 * djm + bs * x[j] * r3 * t1 * dkm -
                    3.0 * bs * x[j] * x[k] * x[m] * r5 * t1 + bs * x[j] * x[k] * r3 * dt1[m] +
                    bs * djk * x[m] * r3 * t1 - bs * r1 * djk * dt1[m] +
                    bs * x[j] * x[m] * r3 * dt1[k] - bs * r1 * dt1[k] * djm -
                    bs * x[j] * r1 * d2t1(k, m);
                const double third_t2 = c3n * djk * djm * t2 * sin_cx[j] -
                                        cn * sin_cx[j] * d2t2(k, m) -
                                        c2n * djk * cos_cx[j] * dt2[m] -
                                        c2n * djm * cos_cx[j] * dt2[k];
                out.thirds(m, j, k) = -a_ * third_t1 - third_t2;
            }
        }
    }
    return out;
}

EnergyDerivatives ackley_derivatives(const AckleyEnergy& model, const Vector& x) {
    return model.evaluate(x, 0.0, 3);
}

}  // namespace geodev
