#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hgail/rng.hpp"

namespace hgail {

// One affine layer. Weight rows correspond to layer outputs, columns to
// inputs; hidden layers are followed by tanh, the last layer is linear.
struct Layer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd biases;
};

struct MlpParams {
  std::vector<Layer> layers;

  int input_dim() const {
    return layers.empty() ? 0 : static_cast<int>(layers.front().weights.cols());
  }
  int output_dim() const {
    return layers.empty() ? 0 : static_cast<int>(layers.back().weights.rows());
  }
  std::size_t parameter_count() const;
};

// Same shape as the parameters it differentiates.
struct Gradient {
  std::vector<Layer> layers;
};

// Scaled uniform init: U[-a, a] with a = sqrt(6 / (fan_in + fan_out)).
MlpParams make_mlp(const std::vector<int>& dims, Rng& rng);

// throws std::invalid_argument if consecutive layer dimensions do not chain
void validate_shape(const MlpParams& params);

// Activations kept from a forward pass; enough to run backward.
// Rows of every matrix are samples.
struct BatchCache {
  Eigen::MatrixXd input;
  std::vector<Eigen::MatrixXd> hidden;  // post-tanh output of each hidden layer
};

// Batched forward: rows of `inputs` are samples. Throws on dimension mismatch.
Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs,
                              BatchCache* cache = nullptr);

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input,
                        BatchCache* cache = nullptr);

// Exact reverse-mode gradient of forward_batch. `output_grads` holds
// dLoss/d(output) per sample row; the returned gradient is summed over rows.
// Optionally also yields dLoss/d(input) per sample.
Gradient backward_batch(const MlpParams& params, const BatchCache& cache,
                        const Eigen::MatrixXd& output_grads,
                        Eigen::MatrixXd* input_grads = nullptr);

std::pair<Gradient, Eigen::VectorXd> backward(const MlpParams& params, const BatchCache& cache,
                                              const Eigen::VectorXd& output_grad);

Gradient zeros_like(const MlpParams& params);
void accumulate(Gradient& dst, const Gradient& src);
void scale(Gradient& grad, double factor);
bool all_finite(const MlpParams& params);
bool all_finite(const Gradient& grad);

// flat views over every parameter, row-major weights then biases per layer
std::vector<double*> parameter_view(MlpParams& params);
std::vector<const double*> parameter_view(const MlpParams& params);
std::vector<const double*> parameter_view(const Gradient& grad);

void sgd_step(MlpParams& params, const Gradient& grad, double lr);

// Adam with bias correction; moments are shape-congruent with the parameters.
struct AdamState {
  std::vector<Layer> m;
  std::vector<Layer> v;
  long step = 0;
};

AdamState make_adam_state(const MlpParams& params);
void adam_step(MlpParams& params, const Gradient& grad, AdamState& state, double lr,
               double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

}  // namespace hgail
