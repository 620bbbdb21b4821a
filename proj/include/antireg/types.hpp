#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "antireg/errors.hpp"

namespace antireg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// A validated n x p design matrix with a provenance label.
/// Construction rejects empty or non-finite inputs; operations downstream
/// may assume finiteness.
class DesignMatrix {
public:
    DesignMatrix(Matrix values, std::string provenance = "")
        : values_(std::move(values)), provenance_(std::move(provenance)) {
        if (values_.rows() < 1 || values_.cols() < 1)
            throw InvalidArgument("DesignMatrix: need at least one row and one column");
        if (!values_.allFinite())
            throw InvalidArgument("DesignMatrix: non-finite entry");
    }

    Index rows() const { return values_.rows(); }
    Index cols() const { return values_.cols(); }
    const Matrix& values() const { return values_; }
    const std::string& provenance() const { return provenance_; }

private:
    Matrix values_;
    std::string provenance_;
};

}  // namespace antireg
