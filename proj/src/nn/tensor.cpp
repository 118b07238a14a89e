#include "hiernav/nn/tensor.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace hiernav::nn
{

namespace
{

void check_same_tape(const Tensor & a, const Tensor & b)
{
  if (a.tape() != b.tape() || a.tape() == nullptr) {
    throw std::invalid_argument("tensors belong to different tapes");
  }
}

void check_same_shape(const Tensor & a, const Tensor & b, const char * op)
{
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
  }
}

}  // namespace

const Matrix & Tensor::value() const
{
  return tape_->value(id_);
}

const Matrix & Tensor::grad() const
{
  return tape_->grad(id_);
}

Tensor Tape::record(Matrix value, std::function<void(Tape &, int)> backward)
{
  nodes_.push_back(Node{std::move(value), Matrix(), std::move(backward), nullptr, -1});
  return Tensor(this, static_cast<int>(nodes_.size()) - 1);
}

Tensor Tape::constant(Matrix value)
{
  return record(std::move(value), nullptr);
}

Tensor Tape::param(const ParameterStore & store, int index)
{
  Tensor t = record(store[index].value, nullptr);
  nodes_.back().store = &store;
  nodes_.back().param_index = index;
  return t;
}

void Tape::add_grad(int id, const Matrix & g)
{
  Node & n = nodes_[id];
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

void Tape::backward(const Tensor & output, double seed)
{
  if (output.tape() != this || output.rows() != 1 || output.cols() != 1) {
    throw std::invalid_argument("backward needs a 1x1 tensor from this tape");
  }
  add_grad(output.id(), Matrix::Constant(1, 1, seed));
  for (int id = output.id(); id >= 0; --id) {
    Node & n = nodes_[id];
    if (n.backward && n.grad.size() != 0) {
      n.backward(*this, id);
    }
  }
}

Gradients Tape::gradients(const ParameterStore & store) const
{
  Gradients grads = zero_gradients(store);
  for (const Node & n : nodes_) {
    if (n.store == &store && n.grad.size() != 0) {
      grads[n.param_index] += n.grad;
    }
  }
  return grads;
}

Tensor matmul(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions differ");
  }
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->record(
    a.value() * b.value(), [ia, ib](Tape & t, int self) {
      const Matrix & g = t.grad(self);
      t.add_grad(ia, g * t.value(ib).transpose());
      t.add_grad(ib, t.value(ia).transpose() * g);
    });
}

Tensor matmul_nt(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  if (a.cols() != b.cols()) {
    throw std::invalid_argument("matmul_nt: inner dimensions differ");
  }
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->record(
    a.value() * b.value().transpose(), [ia, ib](Tape & t, int self) {
      const Matrix & g = t.grad(self);
      t.add_grad(ia, g * t.value(ib));
      t.add_grad(ib, g.transpose() * t.value(ia));
    });
}

Tensor add(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  check_same_shape(a, b, "add");
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->record(
    a.value() + b.value(), [ia, ib](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.add_grad(ia, g);
      t.add_grad(ib, g);
    });
}

Tensor sub(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  check_same_shape(a, b, "sub");
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->record(
    a.value() - b.value(), [ia, ib](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.add_grad(ia, g);
      t.add_grad(ib, -g);
    });
}

Tensor mul(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  check_same_shape(a, b, "mul");
  const int ia = a.id();
  const int ib = b.id();
  return a.tape()->record(
    a.value().cwiseProduct(b.value()), [ia, ib](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.add_grad(ia, g.cwiseProduct(t.value(ib)));
      t.add_grad(ib, g.cwiseProduct(t.value(ia)));
    });
}

Tensor add_row(const Tensor & a, const Tensor & row)
{
  check_same_tape(a, row);
  if (row.rows() != 1 || row.cols() != a.cols()) {
    throw std::invalid_argument("add_row: row must be 1 x cols(a)");
  }
  const int ia = a.id();
  const int ir = row.id();
  Matrix out = a.value();
  out.rowwise() += row.value().row(0);
  return a.tape()->record(
    std::move(out), [ia, ir](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.add_grad(ia, g);
      t.add_grad(ir, g.colwise().sum());
    });
}

Tensor scale(const Tensor & a, double s)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value() * s, [ia, s](Tape & t, int self) {t.add_grad(ia, t.grad(self) * s);});
}

Tensor add_scalar(const Tensor & a, double s)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value().array() + s, [ia](Tape & t, int self) {t.add_grad(ia, t.grad(self));});
}

Tensor relu(const Tensor & a)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value().cwiseMax(0.0), [ia](Tape & t, int self) {
      const Matrix & x = t.value(ia);
      t.add_grad(ia, (x.array() > 0.0).cast<double>().matrix().cwiseProduct(t.grad(self)));
    });
}

Tensor tanh(const Tensor & a)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value().array().tanh().matrix(), [ia](Tape & t, int self) {
      const Matrix & y = t.value(self);
      t.add_grad(ia, (1.0 - y.array().square()).matrix().cwiseProduct(t.grad(self)));
    });
}

Tensor exp(const Tensor & a)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value().array().exp().matrix(), [ia](Tape & t, int self) {
      t.add_grad(ia, t.value(self).cwiseProduct(t.grad(self)));
    });
}

Tensor log(const Tensor & a)
{
  const int ia = a.id();
  return a.tape()->record(
    a.value().array().log().matrix(), [ia](Tape & t, int self) {
      t.add_grad(ia, t.grad(self).cwiseQuotient(t.value(ia)));
    });
}

Tensor sum(const Tensor & a)
{
  const int ia = a.id();
  return a.tape()->record(
    Matrix::Constant(1, 1, a.value().sum()), [ia](Tape & t, int self) {
      const Matrix & x = t.value(ia);
      t.add_grad(ia, Matrix::Constant(x.rows(), x.cols(), t.grad(self)(0, 0)));
    });
}

Tensor mean(const Tensor & a)
{
  return scale(sum(a), 1.0 / static_cast<double>(a.value().size()));
}

Tensor gather_rows(const Tensor & a, const std::vector<int> & rows)
{
  const Matrix & x = a.value();
  Matrix out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] < 0 || rows[r] >= x.rows()) {
      throw std::out_of_range("gather_rows: row index out of range");
    }
    out.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);
  }
  const int ia = a.id();
  return a.tape()->record(
    std::move(out), [ia, rows](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.with_grad(
        ia, [&](Matrix & ga) {
          for (std::size_t r = 0; r < rows.size(); ++r) {
            ga.row(rows[r]) += g.row(static_cast<Eigen::Index>(r));
          }
        });
    });
}

Tensor row_block(const Tensor & a, int first, int count)
{
  if (first < 0 || count < 0 || first + count > a.rows()) {
    throw std::out_of_range("row_block: range out of bounds");
  }
  const int ia = a.id();
  return a.tape()->record(
    a.value().middleRows(first, count), [ia, first, count](Tape & t, int self) {
      const Matrix g = t.grad(self);
      t.with_grad(ia, [&](Matrix & ga) {ga.middleRows(first, count) += g;});
    });
}

Tensor concat_cols(const Tensor & a, const Tensor & b)
{
  check_same_tape(a, b);
  if (a.rows() != b.rows()) {
    throw std::invalid_argument("concat_cols: row counts differ");
  }
  Matrix out(a.rows(), a.cols() + b.cols());
  out << a.value(), b.value();
  const int ia = a.id();
  const int ib = b.id();
  const auto ca = a.cols();
  const auto cb = b.cols();
  return a.tape()->record(
    std::move(out), [ia, ib, ca, cb](Tape & t, int self) {
      const Matrix & g = t.grad(self);
      t.add_grad(ia, g.leftCols(ca));
      t.add_grad(ib, g.rightCols(cb));
    });
}

Tensor l2_norm(const Tensor & a)
{
  const double n = a.value().norm();
  const int ia = a.id();
  return a.tape()->record(
    Matrix::Constant(1, 1, n), [ia, n](Tape & t, int self) {
      if (n > 0.0) {
        t.add_grad(ia, t.value(ia) * (t.grad(self)(0, 0) / n));
      }
    });
}

Tensor masked_softmax(const Tensor & logits, const Mask & mask)
{
  const Matrix & z = logits.value();
  if (mask.rows() != z.rows() || mask.cols() != z.cols()) {
    throw std::invalid_argument("masked_softmax: mask shape mismatch");
  }
  Matrix p = Matrix::Zero(z.rows(), z.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    double peak = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      if (mask(r, c) == 0) {
        peak = std::max(peak, z(r, c));
      }
    }
    if (peak == -std::numeric_limits<double>::infinity()) {
      throw DegenerateMaskError("attention row " + std::to_string(r) + " is fully masked");
    }
    double total = 0.0;
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
      if (mask(r, c) == 0) {
        p(r, c) = std::exp(z(r, c) - peak);
        total += p(r, c);
      }
    }
    p.row(r) /= total;
  }
  const int iz = logits.id();
  return logits.tape()->record(
    std::move(p), [iz](Tape & t, int self) {
      const Matrix & y = t.value(self);
      const Matrix & g = t.grad(self);
      const Eigen::VectorXd inner = y.cwiseProduct(g).rowwise().sum();
      Matrix dz = y.cwiseProduct(g);
      dz -= y.cwiseProduct(inner.replicate(1, y.cols()));
      t.add_grad(iz, dz);
    });
}

Tensor log_softmax(const Tensor & logits)
{
  const Matrix & z = logits.value();
  Matrix out(z.rows(), z.cols());
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double peak = z.row(r).maxCoeff();
    const double lse = peak + std::log((z.row(r).array() - peak).exp().sum());
    out.row(r) = z.row(r).array() - lse;
  }
  const int iz = logits.id();
  return logits.tape()->record(
    std::move(out), [iz](Tape & t, int self) {
      const Matrix & y = t.value(self);
      const Matrix & g = t.grad(self);
      const Matrix p = y.array().exp().matrix();
      const Eigen::VectorXd total = g.rowwise().sum();
      t.add_grad(iz, g - p.cwiseProduct(total.replicate(1, g.cols())));
    });
}

Tensor layer_norm(const Tensor & x, const Tensor & gain, const Tensor & bias, double eps)
{
  check_same_tape(x, gain);
  check_same_tape(x, bias);
  const Matrix & v = x.value();
  const Eigen::Index n = v.cols();
  if (gain.rows() != 1 || gain.cols() != n || bias.rows() != 1 || bias.cols() != n) {
    throw std::invalid_argument("layer_norm: gain/bias must be 1 x cols");
  }
  Matrix normalized(v.rows(), n);
  Eigen::VectorXd inv_std(v.rows());
  for (Eigen::Index r = 0; r < v.rows(); ++r) {
    const double mu = v.row(r).mean();
    const double var = (v.row(r).array() - mu).square().mean();
    inv_std(r) = 1.0 / std::sqrt(var + eps);
    normalized.row(r) = (v.row(r).array() - mu) * inv_std(r);
  }
  Matrix out = normalized.array().rowwise() * gain.value().row(0).array();
  out.rowwise() += bias.value().row(0);
  const int ix = x.id();
  const int ig = gain.id();
  const int ib = bias.id();
  return x.tape()->record(
    std::move(out), [ix, ig, ib, normalized, inv_std](Tape & t, int self) {
      const Matrix & g = t.grad(self);
      const Eigen::Index cols = g.cols();
      t.add_grad(ig, g.cwiseProduct(normalized).colwise().sum());
      t.add_grad(ib, g.colwise().sum());
      const Matrix dxhat = g.array().rowwise() * t.value(ig).row(0).array();
      Matrix dx(g.rows(), cols);
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        const double m1 = dxhat.row(r).mean();
        const double m2 = dxhat.row(r).cwiseProduct(normalized.row(r)).mean();
        dx.row(r) = inv_std(r) * (dxhat.row(r).array() - m1 - normalized.row(r).array() * m2);
      }
      t.add_grad(ix, dx);
    });
}

}  // namespace hiernav::nn
