#pragma once

#include <cstdint>
#include <vector>

#include "antireg/types.hpp"

namespace antireg {

struct Layer {
    Matrix W;  // out x in
    Vector b;
};

/// 1-3 linear layers with rectifier hidden activations and an identity
/// output. Rows of a batch are samples.
class ShallowNet {
public:
    /// dims = {input, hidden..., output}; implies between 1 and 3 layers.
    ShallowNet(const std::vector<Index>& dims, std::uint64_t seed);

    Index num_layers() const { return static_cast<Index>(layers.size()); }
    Index input_dim() const { return layers.front().W.cols(); }
    Index output_dim() const { return layers.back().W.rows(); }

    Matrix forward(const Matrix& X) const;

    std::vector<Layer> layers;
    std::vector<double> trust_radii;  // per layer; empty means unconstrained
};

/// Layer inputs retained during a forward pass for backprop.
struct ForwardCache {
    std::vector<Matrix> inputs;  // inputs[l] = activation entering layer l
    std::vector<Matrix> pre;     // pre[l] = pre-activation leaving layer l
};

Matrix forward_cached(const ShallowNet& net, const Matrix& X, ForwardCache& cache);

struct NetGrads {
    std::vector<Matrix> dW;
    std::vector<Vector> db;

    double global_norm() const;
    void scale(double factor);
    void axpy(double factor, const NetGrads& other);  // this += factor * other
    static NetGrads zeros_like(const ShallowNet& net);
};

/// Backprop of dL/d(output) through the cached forward pass.
NetGrads backward(const ShallowNet& net, const ForwardCache& cache, const Matrix& d_output);

Index param_count(const ShallowNet& net);
Vector flatten_params(const ShallowNet& net);
void set_params(ShallowNet& net, const Vector& theta);
Vector flatten_grads(const NetGrads& grads);

/// Gram matrix of per-example parameter gradients of the scalar output at the
/// current parameters. The finite-width tangent-kernel surrogate.
Matrix empirical_ntk(const ShallowNet& net, const Matrix& inputs);

}  // namespace antireg
