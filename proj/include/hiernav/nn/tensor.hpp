#ifndef HIERNAV_NN_TENSOR_HPP_
#define HIERNAV_NN_TENSOR_HPP_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "hiernav/nn/parameters.hpp"

namespace hiernav::nn
{

/// 1 = masked, 0 = visible.
using Mask = Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

class DegenerateMaskError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class Tape;

/// Handle to a differentiable matrix recorded on a Tape.
class Tensor
{
public:
  Tensor() = default;
  Tensor(Tape * tape, int id)
  : tape_(tape), id_(id) {}

  const Matrix & value() const;
  /// Gradient after Tape::backward; empty if no gradient reached this node.
  const Matrix & grad() const;
  Eigen::Index rows() const {return value().rows();}
  Eigen::Index cols() const {return value().cols();}
  double scalar() const {return value()(0, 0);}

  Tape * tape() const {return tape_;}
  int id() const {return id_;}
  bool valid() const {return tape_ != nullptr;}

private:
  Tape * tape_{nullptr};
  int id_{-1};
};

/// Records operations for one reverse-mode pass. A tape is owned by a single
/// thread; parameters are read from stores that outlive the tape.
class Tape
{
public:
  Tape() = default;
  Tape(const Tape &) = delete;
  Tape & operator=(const Tape &) = delete;

  Tensor constant(Matrix value);
  Tensor param(const ParameterStore & store, int index);

  /// Seeds d(output)/d(output) = `seed` (output must be 1x1) and propagates.
  void backward(const Tensor & output, double seed = 1.0);

  /// Gradient for each parameter of `store` used on this tape (zeros elsewhere).
  Gradients gradients(const ParameterStore & store) const;

  std::size_t size() const {return nodes_.size();}

  // Used by operations.
  Tensor record(Matrix value, std::function<void(Tape &, int)> backward);
  const Matrix & value(int id) const {return nodes_[id].value;}
  const Matrix & grad(int id) const {return nodes_[id].grad;}
  /// grad[id] += g (allocating on first use).
  void add_grad(int id, const Matrix & g);
  template<class Fn>
  void with_grad(int id, Fn && fn)
  {
    Node & n = nodes_[id];
    if (n.grad.size() == 0) {
      n.grad = Matrix::Zero(n.value.rows(), n.value.cols());
    }
    fn(n.grad);
  }

private:
  struct Node
  {
    Matrix value;
    Matrix grad;
    std::function<void(Tape &, int)> backward;
    const ParameterStore * store{nullptr};
    int param_index{-1};
  };
  std::vector<Node> nodes_;
};

// Linear algebra.
Tensor matmul(const Tensor & a, const Tensor & b);
/// a * b^T
Tensor matmul_nt(const Tensor & a, const Tensor & b);
Tensor add(const Tensor & a, const Tensor & b);
Tensor sub(const Tensor & a, const Tensor & b);
/// Elementwise product of equally shaped tensors.
Tensor mul(const Tensor & a, const Tensor & b);
/// Adds a 1 x c row to every row of a.
Tensor add_row(const Tensor & a, const Tensor & row);
Tensor scale(const Tensor & a, double s);
Tensor add_scalar(const Tensor & a, double s);

// Elementwise nonlinearities.
Tensor relu(const Tensor & a);
Tensor tanh(const Tensor & a);
Tensor exp(const Tensor & a);
Tensor log(const Tensor & a);

// Reductions and reshaping.
Tensor sum(const Tensor & a);
Tensor mean(const Tensor & a);
Tensor gather_rows(const Tensor & a, const std::vector<int> & rows);
Tensor row_block(const Tensor & a, int first, int count);
Tensor concat_cols(const Tensor & a, const Tensor & b);
/// Euclidean norm of all entries as 1x1; the gradient at the origin is 0.
Tensor l2_norm(const Tensor & a);

// Row-wise normalisations.
/// Softmax over the unmasked entries of each row; masked entries are exactly 0.
/// Throws DegenerateMaskError if a row is fully masked.
Tensor masked_softmax(const Tensor & logits, const Mask & mask);
Tensor log_softmax(const Tensor & logits);
Tensor layer_norm(const Tensor & x, const Tensor & gain, const Tensor & bias, double eps = 1e-5);

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_TENSOR_HPP_
