#include "hiernav/runner/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace hiernav::runner
{

namespace
{

std::string_view trim(std::string_view s)
{
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template<class T>
T parse_number(const std::string & key, const std::string & text)
{
  T value{};
  const char * begin = text.data();
  const char * end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("invalid value for '" + key + "': " + text);
  }
  return value;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text)
{
  KeyValueConfig config;
  int line_number = 0;
  while (!text.empty()) {
    const auto newline = text.find('\n');
    std::string_view line = text.substr(0, newline);
    text = newline == std::string_view::npos ? std::string_view{} : text.substr(newline + 1);
    ++line_number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_number) + ": expected key=value");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("line " + std::to_string(line_number) + ": empty key");
    }
    if (config.entries_.count(key) != 0) {
      throw ConfigError("line " + std::to_string(line_number) + ": duplicate key '" + key + "'");
    }
    config.entries_[key] = value;
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot read config file " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void KeyValueConfig::set(const std::string & key, const std::string & value)
{
  entries_[key] = value;
}

bool KeyValueConfig::has(const std::string & key) const
{
  return entries_.count(key) != 0;
}

const std::string * KeyValueConfig::lookup(const std::string & key) const
{
  used_.insert(key);
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::string KeyValueConfig::get_string(const std::string & key, const std::string & fallback) const
{
  const std::string * v = lookup(key);
  return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string & key, double fallback) const
{
  const std::string * v = lookup(key);
  return v ? parse_number<double>(key, *v) : fallback;
}

int KeyValueConfig::get_int(const std::string & key, int fallback) const
{
  const std::string * v = lookup(key);
  return v ? parse_number<int>(key, *v) : fallback;
}

std::uint64_t KeyValueConfig::get_uint(const std::string & key, std::uint64_t fallback) const
{
  const std::string * v = lookup(key);
  return v ? parse_number<std::uint64_t>(key, *v) : fallback;
}

bool KeyValueConfig::get_bool(const std::string & key, bool fallback) const
{
  const std::string * v = lookup(key);
  if (!v) {
    return fallback;
  }
  if (*v == "true" || *v == "1" || *v == "yes" || *v == "on") {
    return true;
  }
  if (*v == "false" || *v == "0" || *v == "no" || *v == "off") {
    return false;
  }
  throw ConfigError("invalid boolean for '" + key + "': " + *v);
}

void KeyValueConfig::reject_unused() const
{
  for (const auto & [key, value] : entries_) {
    if (used_.count(key) == 0) {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
}

}  // namespace hiernav::runner
