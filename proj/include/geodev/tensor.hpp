#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace geodev {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Dense cubic rank-3 array, index (i, j, k) stored row-major with k fastest.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int dim, double fill = 0.0);

    int dim() const { return dim_; }

    double& operator()(int i, int j, int k) {
        return data_[index(i, j, k)];
    }
    double operator()(int i, int j, int k) const {
        return data_[index(i, j, k)];
    }

    const std::vector<double>& data() const { return data_; }

    double max_abs() const;

    Tensor3& operator*=(double s);
    Tensor3& operator+=(const Tensor3& other);

    friend Tensor3 operator-(const Tensor3& a, const Tensor3& b);
    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * dim_ + j) * dim_ + k;
    }

    int dim_ = 0;
    std::vector<double> data_;
};

}  // namespace geodev
