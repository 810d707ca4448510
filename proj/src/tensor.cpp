#include "geodev/tensor.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace geodev {

Tensor3::Tensor3(int dim, double fill)
    : dim_(dim),
      data_(static_cast<std::size_t>(dim) * dim * dim, fill) {}

double Tensor3::max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Tensor3& Tensor3::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor3& Tensor3::operator+=(const Tensor3& other) {
    assert(other.dim_ == dim_);
    for (std::size_t n = 0; n < data_.size(); ++n) data_[n] += other.data_[n];
    return *this;
}

Tensor3 operator-(const Tensor3& a, const Tensor3& b) {
    assert(a.dim_ == b.dim_);
    Tensor3 out(a.dim_);
    for (std::size_t n = 0; n < a.data_.size(); ++n)
        out.data_[n] = a.data_[n] - b.data_[n];
    return out;
}

}  // namespace geodev
