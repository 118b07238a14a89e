#include "hiernav/nn/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

namespace hiernav::nn
{

namespace
{

constexpr char kMagic[8] = {'H', 'N', 'C', 'K', 'P', 'T', '0', '1'};

template<class T>
void put(std::string & out, T value)
{
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader
{
public:
  explicit Reader(const std::string & bytes)
  : bytes_(bytes) {}

  template<class T>
  T get()
  {
    if (pos_ + sizeof(T) > bytes_.size()) {
      throw CheckpointError("checkpoint truncated");
    }
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string get_string(std::size_t n)
  {
    if (pos_ + n > bytes_.size()) {
      throw CheckpointError("checkpoint truncated");
    }
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  bool at_end() const {return pos_ == bytes_.size();}

private:
  const std::string & bytes_;
  std::size_t pos_{0};
};

}  // namespace

std::string encode_checkpoint(const ParameterStore & store)
{
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, kCheckpointVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(store.size()));
  for (const auto & p : store) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.name.size()));
    out += p.name;
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.value.rows()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(p.value.cols()));
  }
  for (const auto & p : store) {
    for (Eigen::Index r = 0; r < p.value.rows(); ++r) {
      for (Eigen::Index c = 0; c < p.value.cols(); ++c) {
        put<double>(out, p.value(r, c));
      }
    }
  }
  return out;
}

void decode_checkpoint(ParameterStore & store, const std::string & bytes)
{
  Reader in(bytes);
  if (in.get_string(sizeof(kMagic)) != std::string(kMagic, sizeof(kMagic))) {
    throw CheckpointError("not a checkpoint file (bad magic)");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != kCheckpointVersion) {
    throw CheckpointError("unsupported checkpoint version " + std::to_string(version));
  }
  const auto count = in.get<std::uint32_t>();
  if (count != store.size()) {
    throw CheckpointError(
            "checkpoint holds " + std::to_string(count) + " arrays, network expects " +
            std::to_string(store.size()));
  }
  for (std::size_t i = 0; i < count; ++i) {
    const auto len = in.get<std::uint32_t>();
    const std::string name = in.get_string(len);
    const auto rows = in.get<std::uint32_t>();
    const auto cols = in.get<std::uint32_t>();
    const auto & p = store[i];
    if (name != p.name) {
      throw CheckpointError("array " + std::to_string(i) + " is '" + name + "', expected '" + p.name + "'");
    }
    if (rows != p.value.rows() || cols != p.value.cols()) {
      std::ostringstream os;
      os << "shape mismatch for '" << name << "': checkpoint " << rows << "x" << cols
         << ", network " << p.value.rows() << "x" << p.value.cols();
      throw CheckpointError(os.str());
    }
  }
  std::vector<Matrix> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Matrix m(store[i].value.rows(), store[i].value.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        m(r, c) = in.get<double>();
      }
    }
    values.push_back(std::move(m));
  }
  if (!in.at_end()) {
    throw CheckpointError("trailing bytes after checkpoint payload");
  }
  for (std::size_t i = 0; i < count; ++i) {
    store[i].value = std::move(values[i]);
  }
}

void save_checkpoint(const ParameterStore & store, const std::string & path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw CheckpointError("cannot write checkpoint: " + path);
  }
  const std::string bytes = encode_checkpoint(store);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

void load_checkpoint(ParameterStore & store, const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CheckpointError("cannot read checkpoint: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  decode_checkpoint(store, buffer.str());
}

}  // namespace hiernav::nn
