#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "irsim/geometry.hpp"

namespace irstool {

// Flat `section.key = value` text config. Every key must be consumed by a
// typed getter before finish(); leftovers are reported as unknown keys.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::filesystem::path& path);
  static KeyValueConfig parse_text(std::string_view text);

  bool has(const std::string& key) const;

  std::string get_string(const std::string& key, std::string fallback);
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback);
  double get_double(const std::string& key, double fallback);
  irsim::Position get_position(const std::string& key, irsim::Position fallback);

  // Comma list, or inclusive range `start:step:stop`.
  std::vector<double> get_double_list(const std::string& key,
                                      std::vector<double> fallback);
  std::vector<std::uint64_t> get_u64_list(const std::string& key,
                                          std::vector<std::uint64_t> fallback);
  // Semicolon-separated `x,y` pairs.
  std::vector<irsim::Position> get_position_list(
      const std::string& key, std::vector<irsim::Position> fallback);

  // Throws SpecError naming every key that no getter consumed.
  void finish() const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
  };
  std::map<std::string, Entry> entries_;

  const std::string* consume(const std::string& key);
};

}  // namespace irstool
