#pragma once

#include <cstdint>
#include <vector>

#include "speckle/grid.hpp"
#include "speckle/rng.hpp"
#include "speckle/scatter.hpp"

namespace speckle {

enum class Activation : std::uint8_t { ReLU = 0, Identity = 1 };

// Speckle-to-object inverter: reshape, four dense ReLU hidden layers, dense
// output, reshape. Desk-scale default keeps the expand-contract-expand
// profile of the full-scale network at 1/16 size.
struct NetworkSpec {
    Eigen::Index input_side = 32;
    Eigen::Index output_side = 16;
    std::vector<Eigen::Index> hidden_sizes = {2048, 1024, 512, 4096};
    Activation output_activation = Activation::ReLU;

    Eigen::Index input_size() const { return input_side * input_side; }
    Eigen::Index output_size() const { return output_side * output_side; }
    bool operator==(const NetworkSpec&) const = default;
};

struct DenseLayer {
    Eigen::MatrixXd w;  // out x in
    Eigen::VectorXd b;  // out
    Activation activation = Activation::ReLU;
};

struct Network {
    NetworkSpec spec;
    std::vector<DenseLayer> layers;
};

// He-Gaussian weights (variance 2/fan_in), biases 0.01; weights drawn in
// row-major order per layer so a seed pins every parameter.
Network init_network(const NetworkSpec& spec, SeededRng& rng);

RealVec forward(const Network& net, const RealVec& x);

// Batched forward; samples are columns.
Eigen::MatrixXd forward_batch(const Network& net, const Eigen::MatrixXd& x);

// Mean over all elements of the squared difference; the batched variant is
// the mean over samples of the per-sample MSE.
double mse(const RealVec& yhat, const RealVec& y);
double mse_batch(const Eigen::MatrixXd& yhat, const Eigen::MatrixXd& y);

struct Gradients {
    std::vector<Eigen::MatrixXd> w;
    std::vector<Eigen::VectorXd> b;
};

// Exact batch-MSE gradients for every parameter (ReLU subgradient at 0 is 0).
// Returns the pre-update batch loss.
double backward(const Network& net, const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                Gradients& grads);

void sgd_step(Network& net, const Gradients& grads, double lr);

// Forward + reshape to the object grid, clamped to [0,1] for emission.
RealGrid predict_image(const Network& net, const SpecklePattern& speckle);

}  // namespace speckle
