#ifndef HIERNAV_NN_LAYERS_HPP_
#define HIERNAV_NN_LAYERS_HPP_

#include <random>
#include <string>

#include "hiernav/nn/tensor.hpp"

namespace hiernav::nn
{

/// Output of scaled dot-product attention.
struct AttentionResult
{
  Tensor output;   ///< n x d
  Tensor weights;  ///< n x m, rows sum to 1, exact zeros where masked
};

/// softmax(q k^T / sqrt(d)) v over the unmasked keys of each query row.
/// Throws DegenerateMaskError when a row has no unmasked key.
AttentionResult masked_attention(
  const Tensor & queries, const Tensor & keys, const Tensor & values, const Mask & mask);

/// y = x W + b, W stored in x out.
struct Linear
{
  int weight{-1};
  int bias{-1};

  static Linear create(
    ParameterStore & store, const std::string & name, int in, int out, std::mt19937_64 & rng,
    bool with_bias = true);
  Tensor forward(Tape & tape, const ParameterStore & store, const Tensor & x) const;
};

struct LayerNorm
{
  int gain{-1};
  int bias{-1};

  static LayerNorm create(ParameterStore & store, const std::string & name, int dim);
  Tensor forward(Tape & tape, const ParameterStore & store, const Tensor & x) const;
};

/// Single-head attention with learnable d x d query/key/value projections.
struct Attention
{
  int w_query{-1};
  int w_key{-1};
  int w_value{-1};

  static Attention create(ParameterStore & store, const std::string & name, int dim, std::mt19937_64 & rng);
  AttentionResult forward(
    Tape & tape, const ParameterStore & store, const Tensor & query_source,
    const Tensor & kv_source, const Mask & mask) const;
};

/// Two-layer ReLU perceptron d -> hidden -> d.
struct FeedForward
{
  Linear in;
  Linear out;

  static FeedForward create(
    ParameterStore & store, const std::string & name, int dim, int hidden, std::mt19937_64 & rng);
  Tensor forward(Tape & tape, const ParameterStore & store, const Tensor & x) const;
};

/// Pre-norm residual attention block:
///   x = q + Attn(LN(q), kv, mask);  out = x + FF(LN(x)).
/// With q == kv and the graph mask it is an encoder layer; with a single
/// query row and an all-visible mask it is a decoder cross-attention block.
struct AttentionBlock
{
  LayerNorm attn_norm;
  Attention attention;
  LayerNorm ff_norm;
  FeedForward ff;

  static AttentionBlock create(
    ParameterStore & store, const std::string & name, int dim, int hidden, std::mt19937_64 & rng);
  Tensor forward(
    Tape & tape, const ParameterStore & store, const Tensor & query_source,
    const Tensor & kv_source, const Mask & mask) const;
};

/// Pointer head: logits_j = C * tanh((q Wq) . (k_j Wk) / sqrt(d)), returned as
/// row-wise log-probabilities over the candidate rows of `candidates`.
struct Pointer
{
  int w_query{-1};
  int w_key{-1};
  double clip{10.0};

  static Pointer create(
    ParameterStore & store, const std::string & name, int dim, double clip, std::mt19937_64 & rng);
  Tensor logits(
    Tape & tape, const ParameterStore & store, const Tensor & query, const Tensor & candidates) const;
  Tensor log_probs(
    Tape & tape, const ParameterStore & store, const Tensor & query, const Tensor & candidates) const;
};

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_LAYERS_HPP_
