#include "hiernav/nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace hiernav::nn
{

Adam::Adam(const ParameterStore & store, AdamConfig config)
: config_(config), first_(zero_gradients(store)), second_(zero_gradients(store))
{
}

void Adam::step(ParameterStore & store, const Gradients & grads)
{
  if (grads.size() != store.size() || first_.size() != store.size()) {
    throw std::invalid_argument("Adam::step: gradient count does not match the store");
  }
  double clip = 1.0;
  if (config_.max_grad_norm > 0.0) {
    const double norm = global_norm(grads);
    if (norm > config_.max_grad_norm) {
      clip = config_.max_grad_norm / norm;
    }
  }
  ++steps_;
  const double c1 = 1.0 - std::pow(config_.beta1, static_cast<double>(steps_));
  const double c2 = 1.0 - std::pow(config_.beta2, static_cast<double>(steps_));
  for (std::size_t i = 0; i < store.size(); ++i) {
    const Matrix g = grads[i] * clip;
    first_[i] = config_.beta1 * first_[i] + (1.0 - config_.beta1) * g;
    second_[i] = config_.beta2 * second_[i] + (1.0 - config_.beta2) * g.cwiseProduct(g);
    store[i].value.array() -= config_.learning_rate * (first_[i].array() / c1) /
      ((second_[i].array() / c2).sqrt() + config_.epsilon);
  }
}

}  // namespace hiernav::nn
