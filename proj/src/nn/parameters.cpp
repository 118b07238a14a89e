#include "hiernav/nn/parameters.hpp"

#include <cmath>
#include <stdexcept>

namespace hiernav::nn
{

int ParameterStore::add(std::string name, Matrix init)
{
  if (find(name) >= 0) {
    throw std::invalid_argument("duplicate parameter name: " + name);
  }
  params_.push_back({std::move(name), std::move(init)});
  return static_cast<int>(params_.size()) - 1;
}

int ParameterStore::find(const std::string & name) const
{
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::size_t ParameterStore::scalar_count() const
{
  std::size_t n = 0;
  for (const auto & p : params_) {
    n += static_cast<std::size_t>(p.value.size());
  }
  return n;
}

bool ParameterStore::same_layout(const ParameterStore & other) const
{
  if (size() != other.size()) {
    return false;
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const auto & a = params_[i];
    const auto & b = other.params_[i];
    if (a.name != b.name || a.value.rows() != b.value.rows() || a.value.cols() != b.value.cols()) {
      return false;
    }
  }
  return true;
}

Gradients zero_gradients(const ParameterStore & store)
{
  Gradients grads;
  grads.reserve(store.size());
  for (const auto & p : store) {
    grads.push_back(Matrix::Zero(p.value.rows(), p.value.cols()));
  }
  return grads;
}

void accumulate(Gradients & into, const Gradients & from, double weight)
{
  for (std::size_t i = 0; i < into.size(); ++i) {
    into[i] += weight * from[i];
  }
}

double global_norm(const Gradients & grads)
{
  double sq = 0.0;
  for (const auto & g : grads) {
    sq += g.squaredNorm();
  }
  return std::sqrt(sq);
}

Matrix glorot_uniform(int in, int out, std::mt19937_64 & rng)
{
  const double limit = std::sqrt(6.0 / (in + out));
  std::uniform_real_distribution<double> dist(-limit, limit);
  Matrix m(in, out);
  for (int r = 0; r < in; ++r) {
    for (int c = 0; c < out; ++c) {
      m(r, c) = dist(rng);
    }
  }
  return m;
}

void soft_update(ParameterStore & target, const ParameterStore & source, double tau)
{
  if (!target.same_layout(source)) {
    throw std::invalid_argument("soft_update: parameter layouts differ");
  }
  for (std::size_t i = 0; i < target.size(); ++i) {
    target[i].value = tau * source[i].value + (1.0 - tau) * target[i].value;
  }
}

}  // namespace hiernav::nn
