#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace semsim {

// `key = value` configuration lines, UTF-8, '#' starts a comment line.
// Later assignments win. Keys are returned verbatim; consumers pick the
// keys they understand.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues parse_key_values_file(const std::string& path);

// Typed accessors; throw Error on unparseable values.
double kv_double(const KeyValues& kv, const std::string& key, double fallback);
int kv_int(const KeyValues& kv, const std::string& key, int fallback);
bool kv_bool(const KeyValues& kv, const std::string& key, bool fallback);

}  // namespace semsim
