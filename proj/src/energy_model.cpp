#include "geodev/energy_model.hpp"

#include <cmath>
#include <sstream>

#include "geodev/errors.hpp"
#include "geodev/finite_difference.hpp"

namespace geodev {

namespace {
std::string format_double(const char* prefix, double v) {
    std::ostringstream os;
    os.precision(17);
    os << prefix << v;
    return os.str();
}
}  // namespace

NonPositiveDefinite::NonPositiveDefinite(double min_eigenvalue, double floor)
    : Error(format_double("metric is not positive definite: min eigenvalue ", min_eigenvalue) +
            format_double(" <= floor ", floor)),
      min_eigenvalue_(min_eigenvalue) {}

EnergyOverflow::EnergyOverflow(double exponent)
    : Error(format_double("energy exponent exceeds overflow guard: ", exponent)),
      exponent_(exponent) {}

OriginSingularity::OriginSingularity(double radius)
    : Error(format_double("Ackley derivatives requested at |x| = ", radius)) {}

double EnergyModel::value(const Vector& x, double t) const {
    return evaluate(x, t, 0).value;
}

Vector EnergyModel::gradient(const Vector& x, double t) const {
    return evaluate(x, t, 1).gradient;
}

Matrix EnergyModel::hessian(const Vector& x, double t) const {
    return evaluate(x, t, 2).hessian;
}

Tensor3 EnergyModel::third_derivatives(const Vector& x, double t) const {
    Tensor3 thirds = evaluate(x, t, 3).thirds;
    if (thirds.dim() == x.size()) return thirds;
    return central_matrix_derivative([&](const Vector& y) { return hessian(y, t); }, x, 1e-5);
}

}  // namespace geodev
