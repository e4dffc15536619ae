#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace semsim {

// Base type for data errors: malformed files, unsatisfiable queries.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input stream. Lines and columns are 1-based; column 0 means
// the whole line.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column = 0)
      : Error(locate(msg, line, column)), line(line), column(column) {}

  std::size_t line;
  std::size_t column;

 private:
  static std::string locate(const std::string& msg, std::size_t line,
                            std::size_t column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + msg;
  }
};

// A queried word is missing from the resource vocabulary.
struct OovError : Error {
  explicit OovError(const std::string& word)
      : Error("out-of-vocabulary word: " + word), word(word) {}

  std::string word;
};

}  // namespace semsim
