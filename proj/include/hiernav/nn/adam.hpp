#ifndef HIERNAV_NN_ADAM_HPP_
#define HIERNAV_NN_ADAM_HPP_

#include "hiernav/nn/parameters.hpp"

namespace hiernav::nn
{

struct AdamConfig
{
  double learning_rate{1e-4};
  double beta1{0.9};
  double beta2{0.999};
  double epsilon{1e-8};
  /// Global gradient-norm clip; <= 0 disables clipping.
  double max_grad_norm{0.0};
};

class Adam
{
public:
  Adam(const ParameterStore & store, AdamConfig config);

  void step(ParameterStore & store, const Gradients & grads);
  long steps() const {return steps_;}

private:
  AdamConfig config_;
  Gradients first_;
  Gradients second_;
  long steps_{0};
};

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_ADAM_HPP_
