#include "speckle/network.hpp"

#include <cmath>
#include <string>

namespace speckle {
namespace {

void validate_spec(const NetworkSpec& spec) {
    if (spec.input_side < 1 || spec.output_side < 1)
        throw ConfigError("network: grid sides must be >= 1");
    if (spec.hidden_sizes.empty())
        throw ConfigError("network: need at least one hidden layer");
    for (const Eigen::Index h : spec.hidden_sizes)
        if (h < 1) throw ConfigError("network: hidden sizes must be >= 1");
}

void apply_activation(Eigen::MatrixXd& z, Activation act) {
    if (act == Activation::ReLU) z = z.cwiseMax(0.0);
}

}  // namespace

Network init_network(const NetworkSpec& spec, SeededRng& rng) {
    validate_spec(spec);
    Network net;
    net.spec = spec;

    std::vector<Eigen::Index> sizes;
    sizes.push_back(spec.input_size());
    sizes.insert(sizes.end(), spec.hidden_sizes.begin(), spec.hidden_sizes.end());
    sizes.push_back(spec.output_size());

    GaussianStream gauss(rng);
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        DenseLayer layer;
        const Eigen::Index fan_in = sizes[l], fan_out = sizes[l + 1];
        const double std_dev = std::sqrt(2.0 / static_cast<double>(fan_in));
        layer.w.resize(fan_out, fan_in);
        for (Eigen::Index r = 0; r < fan_out; ++r)
            for (Eigen::Index c = 0; c < fan_in; ++c) layer.w(r, c) = std_dev * gauss.next();
        layer.b = Eigen::VectorXd::Constant(fan_out, 0.01);
        layer.activation =
            l + 2 == sizes.size() ? spec.output_activation : Activation::ReLU;
        net.layers.push_back(std::move(layer));
    }
    return net;
}

Eigen::MatrixXd forward_batch(const Network& net, const Eigen::MatrixXd& x) {
    if (!net.layers.empty() && x.rows() != net.layers.front().w.cols())
        throw DimensionError("forward: input has " + std::to_string(x.rows()) +
                             " features, layer 1 expects " +
                             std::to_string(net.layers.front().w.cols()));
    Eigen::MatrixXd a = x;
    for (const DenseLayer& layer : net.layers) {
        Eigen::MatrixXd z = (layer.w * a).colwise() + layer.b;
        apply_activation(z, layer.activation);
        a = std::move(z);
    }
    return a;
}

RealVec forward(const Network& net, const RealVec& x) {
    return forward_batch(net, x);
}

double mse(const RealVec& yhat, const RealVec& y) {
    if (yhat.size() != y.size()) throw DimensionError("mse: length mismatch");
    return (yhat - y).squaredNorm() / static_cast<double>(y.size());
}

double mse_batch(const Eigen::MatrixXd& yhat, const Eigen::MatrixXd& y) {
    if (yhat.rows() != y.rows() || yhat.cols() != y.cols())
        throw DimensionError("mse: shape mismatch");
    return (yhat - y).squaredNorm() / static_cast<double>(y.size());
}

double backward(const Network& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                Gradients& grads) {
    const std::size_t depth = net.layers.size();
    grads.w.resize(depth);
    grads.b.resize(depth);

    // forward pass keeping pre-activations and layer inputs
    std::vector<Eigen::MatrixXd> inputs(depth);   // a_{l-1}
    std::vector<Eigen::MatrixXd> preacts(depth);  // z_l
    Eigen::MatrixXd a = x;
    for (std::size_t l = 0; l < depth; ++l) {
        inputs[l] = a;
        preacts[l] = (net.layers[l].w * a).colwise() + net.layers[l].b;
        a = preacts[l];
        apply_activation(a, net.layers[l].activation);
    }
    if (a.rows() != y.rows() || a.cols() != y.cols())
        throw DimensionError("backward: target shape mismatch");

    const double loss = mse_batch(a, y);

    // dL/dyhat for the all-elements mean
    Eigen::MatrixXd delta = 2.0 * (a - y) / static_cast<double>(y.size());
    for (std::size_t l = depth; l-- > 0;) {
        if (net.layers[l].activation == Activation::ReLU)
            delta = (preacts[l].array() > 0.0).cast<double>() * delta.array();
        grads.w[l].noalias() = delta * inputs[l].transpose();
        grads.b[l] = delta.rowwise().sum();
        if (l > 0) delta = net.layers[l].w.transpose() * delta;
    }
    return loss;
}

void sgd_step(Network& net, const Gradients& grads, double lr) {
    if (lr < 0.0) throw DomainError("sgd_step: negative learning rate");
    if (grads.w.size() != net.layers.size())
        throw DimensionError("sgd_step: gradient/layer count mismatch");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        net.layers[l].w -= lr * grads.w[l];
        net.layers[l].b -= lr * grads.b[l];
    }
}

RealGrid predict_image(const Network& net, const SpecklePattern& speckle) {
    if (speckle.grid.rows() != net.spec.input_side ||
        speckle.grid.cols() != net.spec.input_side)
        throw DimensionError("predict_image: speckle is " + std::to_string(speckle.grid.rows()) +
                             "x" + std::to_string(speckle.grid.cols()) + ", network expects " +
                             std::to_string(net.spec.input_side) + " per side");
    const RealVec yhat = forward(net, flatten(speckle.grid));
    RealGrid image = reshape(yhat, net.spec.output_side, net.spec.output_side);
    return image.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace speckle
