#include "semsim/config.hpp"

#include <cctype>
#include <fstream>
#include <istream>

#include "semsim/error.hpp"

namespace semsim {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin])))
    ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1])))
    --end;
  return s.substr(begin, end - begin);
}

}  // namespace

KeyValues parse_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno);
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError("empty configuration key", lineno);
    kv[key] = value;
  }
  return kv;
}

KeyValues parse_key_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open configuration file: " + path);
  return parse_key_values(in);
}

double kv_double(const KeyValues& kv, const std::string& key, double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(it->second, &used);
  } catch (const std::exception&) {
    throw Error("configuration key '" + key + "' is not a number: " +
                it->second);
  }
  if (used != it->second.size())
    throw Error("configuration key '" + key + "' is not a number: " +
                it->second);
  return value;
}

int kv_int(const KeyValues& kv, const std::string& key, int fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::size_t used = 0;
  int value = 0;
  try {
    value = std::stoi(it->second, &used);
  } catch (const std::exception&) {
    throw Error("configuration key '" + key + "' is not an integer: " +
                it->second);
  }
  if (used != it->second.size())
    throw Error("configuration key '" + key + "' is not an integer: " +
                it->second);
  return value;
}

bool kv_bool(const KeyValues& kv, const std::string& key, bool fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  const std::string& v = it->second;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error("configuration key '" + key + "' is not a boolean: " + v);
}

}  // namespace semsim
