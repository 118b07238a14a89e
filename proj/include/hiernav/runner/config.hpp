#ifndef HIERNAV_RUNNER_CONFIG_HPP_
#define HIERNAV_RUNNER_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hiernav::runner
{

/// Invalid configuration file, key or value.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` configuration. Blank lines and lines starting with '#'
/// are ignored. Typed getters record which keys were read so that
/// `reject_unused` can flag typos.
class KeyValueConfig
{
public:
  static KeyValueConfig parse(std::string_view text);
  static KeyValueConfig load(const std::string & path);

  void set(const std::string & key, const std::string & value);
  bool has(const std::string & key) const;

  std::string get_string(const std::string & key, const std::string & fallback) const;
  double get_double(const std::string & key, double fallback) const;
  int get_int(const std::string & key, int fallback) const;
  std::uint64_t get_uint(const std::string & key, std::uint64_t fallback) const;
  bool get_bool(const std::string & key, bool fallback) const;

  /// Throws ConfigError naming the first key no getter asked for.
  void reject_unused() const;

  const std::map<std::string, std::string> & entries() const {return entries_;}

private:
  const std::string * lookup(const std::string & key) const;

  std::map<std::string, std::string> entries_;
  mutable std::set<std::string> used_;
};

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_CONFIG_HPP_
