#include "hiernav/nn/layers.hpp"

#include <cmath>

namespace hiernav::nn
{

AttentionResult masked_attention(
  const Tensor & queries, const Tensor & keys, const Tensor & values, const Mask & mask)
{
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(queries.cols()));
  const Tensor scores = scale(matmul_nt(queries, keys), inv_sqrt_d);
  Tensor weights = masked_softmax(scores, mask);
  return {matmul(weights, values), weights};
}

Linear Linear::create(
  ParameterStore & store, const std::string & name, int in, int out, std::mt19937_64 & rng,
  bool with_bias)
{
  Linear l;
  l.weight = store.add(name + ".weight", glorot_uniform(in, out, rng));
  if (with_bias) {
    l.bias = store.add(name + ".bias", Matrix::Zero(1, out));
  }
  return l;
}

Tensor Linear::forward(Tape & tape, const ParameterStore & store, const Tensor & x) const
{
  Tensor y = matmul(x, tape.param(store, weight));
  if (bias >= 0) {
    y = add_row(y, tape.param(store, bias));
  }
  return y;
}

LayerNorm LayerNorm::create(ParameterStore & store, const std::string & name, int dim)
{
  return {store.add(name + ".gain", Matrix::Ones(1, dim)), store.add(name + ".bias", Matrix::Zero(1, dim))};
}

Tensor LayerNorm::forward(Tape & tape, const ParameterStore & store, const Tensor & x) const
{
  return layer_norm(x, tape.param(store, gain), tape.param(store, bias));
}

Attention Attention::create(ParameterStore & store, const std::string & name, int dim, std::mt19937_64 & rng)
{
  Attention a;
  a.w_query = store.add(name + ".w_query", glorot_uniform(dim, dim, rng));
  a.w_key = store.add(name + ".w_key", glorot_uniform(dim, dim, rng));
  a.w_value = store.add(name + ".w_value", glorot_uniform(dim, dim, rng));
  return a;
}

AttentionResult Attention::forward(
  Tape & tape, const ParameterStore & store, const Tensor & query_source,
  const Tensor & kv_source, const Mask & mask) const
{
  const Tensor q = matmul(query_source, tape.param(store, w_query));
  const Tensor k = matmul(kv_source, tape.param(store, w_key));
  const Tensor v = matmul(kv_source, tape.param(store, w_value));
  return masked_attention(q, k, v, mask);
}

FeedForward FeedForward::create(
  ParameterStore & store, const std::string & name, int dim, int hidden, std::mt19937_64 & rng)
{
  return {Linear::create(store, name + ".in", dim, hidden, rng), Linear::create(store, name + ".out", hidden, dim, rng)};
}

Tensor FeedForward::forward(Tape & tape, const ParameterStore & store, const Tensor & x) const
{
  return out.forward(tape, store, relu(in.forward(tape, store, x)));
}

AttentionBlock AttentionBlock::create(
  ParameterStore & store, const std::string & name, int dim, int hidden, std::mt19937_64 & rng)
{
  AttentionBlock b;
  b.attn_norm = LayerNorm::create(store, name + ".attn_norm", dim);
  b.attention = Attention::create(store, name + ".attn", dim, rng);
  b.ff_norm = LayerNorm::create(store, name + ".ff_norm", dim);
  b.ff = FeedForward::create(store, name + ".ff", dim, hidden, rng);
  return b;
}

Tensor AttentionBlock::forward(
  Tape & tape, const ParameterStore & store, const Tensor & query_source,
  const Tensor & kv_source, const Mask & mask) const
{
  const Tensor normed = attn_norm.forward(tape, store, query_source);
  // Self-attention normalises keys/values with the same statistics as the queries.
  const Tensor kv = query_source.id() == kv_source.id() ? normed : kv_source;
  const Tensor x = add(query_source, attention.forward(tape, store, normed, kv, mask).output);
  return add(x, ff.forward(tape, store, ff_norm.forward(tape, store, x)));
}

Pointer Pointer::create(
  ParameterStore & store, const std::string & name, int dim, double clip, std::mt19937_64 & rng)
{
  Pointer p;
  p.w_query = store.add(name + ".w_query", glorot_uniform(dim, dim, rng));
  p.w_key = store.add(name + ".w_key", glorot_uniform(dim, dim, rng));
  p.clip = clip;
  return p;
}

Tensor Pointer::logits(
  Tape & tape, const ParameterStore & store, const Tensor & query, const Tensor & candidates) const
{
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(query.cols()));
  const Tensor q = matmul(query, tape.param(store, w_query));
  const Tensor k = matmul(candidates, tape.param(store, w_key));
  return scale(tanh(scale(matmul_nt(q, k), inv_sqrt_d)), clip);
}

Tensor Pointer::log_probs(
  Tape & tape, const ParameterStore & store, const Tensor & query, const Tensor & candidates) const
{
  return log_softmax(logits(tape, store, query, candidates));
}

}  // namespace hiernav::nn
