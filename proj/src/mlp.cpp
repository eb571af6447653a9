#include "hgail/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hgail {

std::size_t MlpParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += l.weights.size() + l.biases.size();
  return n;
}

MlpParams make_mlp(const std::vector<int>& dims, Rng& rng) {
  if (dims.size() < 2) throw std::invalid_argument("make_mlp: need at least input and output dims");
  MlpParams params;
  for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
    const int fan_in = dims[i];
    const int fan_out = dims[i + 1];
    if (fan_in <= 0 || fan_out <= 0) throw std::invalid_argument("make_mlp: non-positive layer dim");
    const double a = std::sqrt(6.0 / (fan_in + fan_out));
    Layer layer;
    layer.weights.resize(fan_out, fan_in);
    for (int r = 0; r < fan_out; ++r)
      for (int c = 0; c < fan_in; ++c) layer.weights(r, c) = rng.uniform(-a, a);
    layer.biases = Eigen::VectorXd::Zero(fan_out);
    params.layers.push_back(std::move(layer));
  }
  return params;
}

void validate_shape(const MlpParams& params) {
  if (params.layers.empty()) throw std::invalid_argument("mlp: no layers");
  for (std::size_t i = 0; i + 1 < params.layers.size(); ++i) {
    if (params.layers[i].weights.rows() != params.layers[i + 1].weights.cols())
      throw std::invalid_argument("mlp: layer dimensions do not chain at layer " + std::to_string(i));
  }
  for (const auto& l : params.layers) {
    if (l.biases.size() != l.weights.rows())
      throw std::invalid_argument("mlp: bias length does not match weight rows");
  }
}

Eigen::MatrixXd forward_batch(const MlpParams& params, const Eigen::MatrixXd& inputs,
                              BatchCache* cache) {
  if (params.layers.empty()) throw std::invalid_argument("forward: empty network");
  if (inputs.cols() != params.input_dim())
    throw std::invalid_argument("forward: input dim " + std::to_string(inputs.cols()) +
                                " does not match network input " + std::to_string(params.input_dim()));
  if (cache) {
    cache->input = inputs;
    cache->hidden.clear();
  }
  Eigen::MatrixXd act = inputs;
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    const Layer& l = params.layers[i];
    Eigen::MatrixXd z = act * l.weights.transpose();
    z.rowwise() += l.biases.transpose();
    if (i + 1 < params.layers.size()) {
      act = z.array().tanh().matrix();
      if (cache) cache->hidden.push_back(act);
    } else {
      act = std::move(z);
    }
  }
  return act;
}

Eigen::VectorXd forward(const MlpParams& params, const Eigen::VectorXd& input, BatchCache* cache) {
  const Eigen::MatrixXd out = forward_batch(params, input.transpose(), cache);
  return out.row(0).transpose();
}

Gradient backward_batch(const MlpParams& params, const BatchCache& cache,
                        const Eigen::MatrixXd& output_grads, Eigen::MatrixXd* input_grads) {
  const auto n_layers = params.layers.size();
  if (n_layers == 0) throw std::invalid_argument("backward: empty network");
  if (cache.hidden.size() + 1 != n_layers)
    throw std::invalid_argument("backward: cache does not match network depth");
  if (output_grads.cols() != params.output_dim() || output_grads.rows() != cache.input.rows())
    throw std::invalid_argument("backward: output_grads shape mismatch");

  Gradient grad = zeros_like(params);
  // delta = dLoss/d(pre-activation) of the current layer; the output layer is
  // linear so it starts as the raw output gradient
  Eigen::MatrixXd delta = output_grads;
  for (std::size_t i = n_layers; i-- > 0;) {
    const Eigen::MatrixXd& below = (i == 0) ? cache.input : cache.hidden[i - 1];
    grad.layers[i].weights = delta.transpose() * below;
    grad.layers[i].biases = delta.colwise().sum().transpose();
    Eigen::MatrixXd prev = delta * params.layers[i].weights;
    if (i > 0) {
      // tanh'(z) = 1 - tanh(z)^2, recovered from the cached post-activation
      delta = (prev.array() * (1.0 - cache.hidden[i - 1].array().square())).matrix();
    } else if (input_grads) {
      *input_grads = std::move(prev);
    }
  }
  return grad;
}

std::pair<Gradient, Eigen::VectorXd> backward(const MlpParams& params, const BatchCache& cache,
                                              const Eigen::VectorXd& output_grad) {
  Eigen::MatrixXd input_grads;
  Gradient g = backward_batch(params, cache, output_grad.transpose(), &input_grads);
  return {std::move(g), input_grads.row(0).transpose()};
}

Gradient zeros_like(const MlpParams& params) {
  Gradient g;
  for (const auto& l : params.layers) {
    g.layers.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                        Eigen::VectorXd::Zero(l.biases.size())});
  }
  return g;
}

void accumulate(Gradient& dst, const Gradient& src) {
  for (std::size_t i = 0; i < dst.layers.size(); ++i) {
    dst.layers[i].weights += src.layers[i].weights;
    dst.layers[i].biases += src.layers[i].biases;
  }
}

void scale(Gradient& grad, double factor) {
  for (auto& l : grad.layers) {
    l.weights *= factor;
    l.biases *= factor;
  }
}

bool all_finite(const MlpParams& params) {
  for (const auto& l : params.layers)
    if (!l.weights.allFinite() || !l.biases.allFinite()) return false;
  return true;
}

bool all_finite(const Gradient& grad) {
  for (const auto& l : grad.layers)
    if (!l.weights.allFinite() || !l.biases.allFinite()) return false;
  return true;
}

namespace {

template <typename Params, typename Ptr>
std::vector<Ptr> view_impl(Params& params) {
  std::vector<Ptr> out;
  for (auto& l : params.layers) {
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r)
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) out.push_back(&l.weights(r, c));
    for (Eigen::Index k = 0; k < l.biases.size(); ++k) out.push_back(&l.biases(k));
  }
  return out;
}

}  // namespace

std::vector<double*> parameter_view(MlpParams& params) {
  return view_impl<MlpParams, double*>(params);
}
std::vector<const double*> parameter_view(const MlpParams& params) {
  return view_impl<const MlpParams, const double*>(params);
}
std::vector<const double*> parameter_view(const Gradient& grad) {
  return view_impl<const Gradient, const double*>(grad);
}

void sgd_step(MlpParams& params, const Gradient& grad, double lr) {
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    params.layers[i].weights -= lr * grad.layers[i].weights;
    params.layers[i].biases -= lr * grad.layers[i].biases;
  }
}

AdamState make_adam_state(const MlpParams& params) {
  AdamState s;
  for (const auto& l : params.layers) {
    s.m.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                   Eigen::VectorXd::Zero(l.biases.size())});
    s.v.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                   Eigen::VectorXd::Zero(l.biases.size())});
  }
  return s;
}

void adam_step(MlpParams& params, const Gradient& grad, AdamState& state, double lr, double beta1,
               double beta2, double eps) {
  state.step += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.layers.size(); ++i) {
    auto& m = state.m[i];
    auto& v = state.v[i];
    const auto& g = grad.layers[i];
    m.weights = beta1 * m.weights + (1.0 - beta1) * g.weights;
    m.biases = beta1 * m.biases + (1.0 - beta1) * g.biases;
    v.weights = beta2 * v.weights + (1.0 - beta2) * g.weights.array().square().matrix();
    v.biases = beta2 * v.biases + (1.0 - beta2) * g.biases.array().square().matrix();
    params.layers[i].weights.array() -=
        lr * (m.weights.array() / bc1) / ((v.weights.array() / bc2).sqrt() + eps);
    params.layers[i].biases.array() -=
        lr * (m.biases.array() / bc1) / ((v.biases.array() / bc2).sqrt() + eps);
  }
}

}  // namespace hgail
