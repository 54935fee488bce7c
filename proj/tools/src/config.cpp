#include "irstool/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "irstool/errors.hpp"

namespace irstool {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

bool valid_key(std::string_view key) {
  if (key.empty()) return false;
  for (char c : key) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.')
      return false;
  }
  return true;
}

double parse_double(std::string_view text, const std::string& key) {
  const std::string_view t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value))
    throw SpecError("invalid number '" + std::string(t) + "' for key '" + key +
                    "'");
  return value;
}

std::uint64_t parse_u64(std::string_view text, const std::string& key) {
  const std::string_view t = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc{} || ptr != t.data() + t.size())
    throw SpecError("invalid nonnegative integer '" + std::string(t) +
                    "' for key '" + key + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

irsim::Position parse_position(std::string_view text, const std::string& key) {
  const auto parts = split(text, ',');
  if (parts.size() != 2)
    throw SpecError("expected 'x,y' pair for key '" + key + "', got '" +
                    std::string(trim(text)) + "'");
  return {parse_double(parts[0], key), parse_double(parts[1], key)};
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read spec file: " + path.string());
  return parse_text(buffer.str());
}

KeyValueConfig KeyValueConfig::parse_text(std::string_view text) {
  KeyValueConfig cfg;
  int line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string_view::npos)
      throw SpecError("line " + std::to_string(line_no) +
                      ": expected 'key = value'");
    const std::string key{trim(stripped.substr(0, eq))};
    if (!valid_key(key))
      throw SpecError("line " + std::to_string(line_no) + ": invalid key '" +
                      key + "'");
    const auto [it, inserted] = cfg.entries_.try_emplace(
        key, Entry{std::string(trim(stripped.substr(eq + 1))), line_no});
    if (!inserted)
      throw SpecError("duplicate key '" + key + "' (lines " +
                      std::to_string(it->second.line) + " and " +
                      std::to_string(line_no) + ")");
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

const std::string* KeyValueConfig::consume(const std::string& key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.used = true;
  return &it->second.value;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       std::string fallback) {
  const std::string* v = consume(key);
  return v ? *v : std::move(fallback);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) {
  const std::string* v = consume(key);
  return v ? parse_u64(*v, key) : fallback;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) {
  const std::string* v = consume(key);
  return v ? parse_double(*v, key) : fallback;
}

irsim::Position KeyValueConfig::get_position(const std::string& key,
                                             irsim::Position fallback) {
  const std::string* v = consume(key);
  return v ? parse_position(*v, key) : fallback;
}

std::vector<double> KeyValueConfig::get_double_list(
    const std::string& key, std::vector<double> fallback) {
  const std::string* v = consume(key);
  if (!v) return fallback;
  if (v->find(':') != std::string::npos) {
    const auto parts = split(*v, ':');
    if (parts.size() != 3)
      throw SpecError("expected 'start:step:stop' for key '" + key + "'");
    const double start = parse_double(parts[0], key);
    const double step = parse_double(parts[1], key);
    const double stop = parse_double(parts[2], key);
    if (!(step > 0.0) || stop < start)
      throw SpecError("bad range for key '" + key +
                      "': need step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(
        std::floor((stop - start) / step + 0.5));
    std::vector<double> values;
    values.reserve(count + 1);
    for (std::size_t i = 0; i <= count; ++i)
      values.push_back(start + static_cast<double>(i) * step);
    return values;
  }
  std::vector<double> values;
  for (std::string_view part : split(*v, ','))
    values.push_back(parse_double(part, key));
  return values;
}

std::vector<std::uint64_t> KeyValueConfig::get_u64_list(
    const std::string& key, std::vector<std::uint64_t> fallback) {
  const std::string* v = consume(key);
  if (!v) return fallback;
  std::vector<std::uint64_t> values;
  for (std::string_view part : split(*v, ','))
    values.push_back(parse_u64(part, key));
  return values;
}

std::vector<irsim::Position> KeyValueConfig::get_position_list(
    const std::string& key, std::vector<irsim::Position> fallback) {
  const std::string* v = consume(key);
  if (!v) return fallback;
  std::vector<irsim::Position> values;
  for (std::string_view part : split(*v, ';'))
    values.push_back(parse_position(part, key));
  return values;
}

void KeyValueConfig::finish() const {
  std::string unknown;
  for (const auto& [key, entry] : entries_) {
    if (entry.used) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += "'" + key + "' (line " + std::to_string(entry.line) + ")";
  }
  if (!unknown.empty()) throw SpecError("unknown key(s): " + unknown);
}

}  // namespace irstool
