#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ffdlt {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;
using Step = std::int32_t;

enum class Campaign : std::uint8_t { A = 0, B = 1 };

inline Campaign rival(Campaign c) { return c == Campaign::A ? Campaign::B : Campaign::A; }

inline char campaign_letter(Campaign c) { return c == Campaign::A ? 'A' : 'B'; }

enum class ModelKind : std::uint8_t {
  NonCompetitive,
  SemiProgressive,
  NonProgressive,
};

inline const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::NonCompetitive: return "nc";
    case ModelKind::SemiProgressive: return "sp";
    case ModelKind::NonProgressive: return "np";
  }
  return "?";
}

/// Error raised while reading an edge-list file; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffdlt
