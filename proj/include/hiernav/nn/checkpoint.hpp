#ifndef HIERNAV_NN_CHECKPOINT_HPP_
#define HIERNAV_NN_CHECKPOINT_HPP_

#include <stdexcept>
#include <string>

#include "hiernav/nn/parameters.hpp"

namespace hiernav::nn
{

class CheckpointError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Binary layout (little-endian):
///   magic "HNCKPT01" | u32 version | u32 array count
///   manifest: per array { u32 name length | name bytes | u32 rows | u32 cols }
///   payload: every array's values as f64, row-major, in manifest order
inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const ParameterStore & store, const std::string & path);
/// Loads into an existing store. Throws CheckpointError on a bad header,
/// version, name or shape mismatch; `store` is left unchanged on failure.
void load_checkpoint(ParameterStore & store, const std::string & path);

std::string encode_checkpoint(const ParameterStore & store);
void decode_checkpoint(ParameterStore & store, const std::string & bytes);

}  // namespace hiernav::nn

#endif  // HIERNAV_NN_CHECKPOINT_HPP_
