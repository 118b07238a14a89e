#ifndef HIERNAV_NN_PARAMETERS_HPP_
#define HIERNAV_NN_PARAMETERS_HPP_

#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hiernav::nn
{

using Matrix = Eigen::MatrixXd;

struct Parameter
{
  std::string name;
  Matrix value;
};

/// Ordered, named parameter arrays. A value type: copying a store snapshots
/// every weight, which is how target networks and worker snapshots are made.
class ParameterStore
{
public:
  int add(std::string name, Matrix init);

  std::size_t size() const {return params_.size();}
  Parameter & operator[](std::size_t i) {return params_[i];}
  const Parameter & operator[](std::size_t i) const {return params_[i];}
  auto begin() const {return params_.begin();}
  auto end() const {return params_.end();}
  auto begin() {return params_.begin();}
  auto end() {return params_.end();}

  /// Index of the parameter called `name`, or -1.
  int find(const std::string & name) const;
  std::size_t scalar_count() const;

  /// True if both stores hold the same names with the same shapes.
  bool same_layout(const ParameterStore & other) const;

private:
  std::vector<Parameter> params_;
};

/// One gradient array per parameter of a store, co-indexed.
using Gradients = std::vector<Matrix>;

Gradients zero_gradients(const ParameterStore & store);
void accumulate(Gradients & into, const Gradients & from, double weight = 1.0);
double global_norm(const Gradients & grads);

/// Glorot-uniform initialisation for an in x out weight matrix.
Matrix glorot_uniform(int in, int out, std::mt19937_64 & rng);

/// target <- tau * source + (1 - tau) * target, elementwise.
/// Throws std::invalid_argument on layout mismatch.
void soft_update(ParameterStore & target, const ParameterStore & source, double tau);

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_PARAMETERS_HPP_
