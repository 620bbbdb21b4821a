#include "antireg/net.hpp"

#include <cmath>
#include <random>

#include "antireg/random.hpp"

namespace antireg {

ShallowNet::ShallowNet(const std::vector<Index>& dims, std::uint64_t seed) {
    if (dims.size() < 2 || dims.size() > 4)
        throw InvalidArgument("ShallowNet: between 1 and 3 linear layers");
    for (Index d : dims)
        if (d < 1) throw InvalidArgument("ShallowNet: dimensions must be positive");

    std::mt19937_64 rng = make_rng(seed);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer layer;
        const Index fan_in = dims[l];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        std::uniform_real_distribution<double> uniform(-bound, bound);
        layer.W.resize(dims[l + 1], dims[l]);
        for (Index i = 0; i < layer.W.rows(); ++i)
            for (Index j = 0; j < layer.W.cols(); ++j) layer.W(i, j) = uniform(rng);
        layer.b = Vector::Zero(dims[l + 1]);
        layers.push_back(std::move(layer));
    }
}

Matrix forward_cached(const ShallowNet& net, const Matrix& X, ForwardCache& cache) {
    cache.inputs.clear();
    cache.pre.clear();
    Matrix a = X;
    for (Index l = 0; l < net.num_layers(); ++l) {
        cache.inputs.push_back(a);
        Matrix z = (a * net.layers[l].W.transpose()).rowwise() + net.layers[l].b.transpose();
        cache.pre.push_back(z);
        a = (l + 1 < net.num_layers()) ? z.cwiseMax(0.0) : z;
    }
    return a;
}

Matrix ShallowNet::forward(const Matrix& X) const {
    ForwardCache cache;
    return forward_cached(*this, X, cache);
}

double NetGrads::global_norm() const {
    double sq = 0.0;
    for (const auto& g : dW) sq += g.squaredNorm();
    for (const auto& g : db) sq += g.squaredNorm();
    return std::sqrt(sq);
}

void NetGrads::scale(double factor) {
    for (auto& g : dW) g *= factor;
    for (auto& g : db) g *= factor;
}

void NetGrads::axpy(double factor, const NetGrads& other) {
    for (std::size_t l = 0; l < dW.size(); ++l) {
        dW[l] += factor * other.dW[l];
        db[l] += factor * other.db[l];
    }
}

NetGrads NetGrads::zeros_like(const ShallowNet& net) {
    NetGrads g;
    for (const auto& layer : net.layers) {
        g.dW.push_back(Matrix::Zero(layer.W.rows(), layer.W.cols()));
        g.db.push_back(Vector::Zero(layer.b.size()));
    }
    return g;
}

NetGrads backward(const ShallowNet& net, const ForwardCache& cache, const Matrix& d_output) {
    NetGrads grads = NetGrads::zeros_like(net);
    Matrix delta = d_output;
    for (Index l = net.num_layers() - 1; l >= 0; --l) {
        grads.dW[l] = delta.transpose() * cache.inputs[l];
        grads.db[l] = delta.colwise().sum();
        if (l > 0) {
            delta = delta * net.layers[l].W;
            // Rectifier subgradient of the previous layer's pre-activation.
            delta = ((cache.pre[l - 1].array() > 0.0).cast<double>() * delta.array()).matrix();
        }
    }
    return grads;
}

Index param_count(const ShallowNet& net) {
    Index count = 0;
    for (const auto& layer : net.layers) count += layer.W.size() + layer.b.size();
    return count;
}

Vector flatten_params(const ShallowNet& net) {
    Vector theta(param_count(net));
    Index at = 0;
    for (const auto& layer : net.layers) {
        theta.segment(at, layer.W.size()) =
            Eigen::Map<const Vector>(layer.W.data(), layer.W.size());
        at += layer.W.size();
        theta.segment(at, layer.b.size()) = layer.b;
        at += layer.b.size();
    }
    return theta;
}

void set_params(ShallowNet& net, const Vector& theta) {
    if (theta.size() != param_count(net)) throw InvalidArgument("set_params: length mismatch");
    Index at = 0;
    for (auto& layer : net.layers) {
        layer.W = Eigen::Map<const Matrix>(theta.data() + at, layer.W.rows(), layer.W.cols());
        at += layer.W.size();
        layer.b = theta.segment(at, layer.b.size());
        at += layer.b.size();
    }
}

Vector flatten_grads(const NetGrads& grads) {
    Index total = 0;
    for (std::size_t l = 0; l < grads.dW.size(); ++l)
        total += grads.dW[l].size() + grads.db[l].size();
    Vector flat(total);
    Index at = 0;
    for (std::size_t l = 0; l < grads.dW.size(); ++l) {
        flat.segment(at, grads.dW[l].size()) =
            Eigen::Map<const Vector>(grads.dW[l].data(), grads.dW[l].size());
        at += grads.dW[l].size();
        flat.segment(at, grads.db[l].size()) = grads.db[l];
        at += grads.db[l].size();
    }
    return flat;
}

Matrix empirical_ntk(const ShallowNet& net, const Matrix& inputs) {
    if (net.output_dim() != 1)
        throw InvalidArgument("empirical_ntk: defined for scalar-output networks");
    if (!inputs.allFinite()) throw InvalidArgument("empirical_ntk: non-finite inputs");

    const Index n = inputs.rows();
    Matrix J(n, param_count(net));
    for (Index i = 0; i < n; ++i) {
        ForwardCache cache;
        forward_cached(net, inputs.row(i), cache);
        NetGrads g = backward(net, cache, Matrix::Ones(1, 1));
        J.row(i) = flatten_grads(g);
    }
    Matrix K = J * J.transpose();
    return 0.5 * (K + K.transpose());
}

}  // namespace antireg
