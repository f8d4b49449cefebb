#pragma once

// Problem files (JSON) and the built-in example catalog.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tbo/git.hpp"

namespace tbo {

struct ProblemOptions {
  std::optional<std::int64_t> k_min;  // default -2
  std::optional<std::int64_t> k_max;  // default N + 2
  unsigned specializations = 5;
  unsigned prime_bits = 62;
  std::uint64_t seed = 1;
};

struct ProblemFile {
  std::string name;
  std::string description;
  std::size_t r = 0;
  std::vector<IntVector> characters;
  RatVector omega_plus;
  RatVector omega_minus;
  ProblemOptions options;

  GitDatum plus() const;
  GitDatum minus() const;
};

/// Throws ParseError naming the offending field.
ProblemFile parse_problem(const std::string& json_text);
ProblemFile load_problem(const std::string& path);
/// Canonical JSON text; parse_problem(to_json(p)) reproduces p.
std::string to_json(const ProblemFile& p);

/// Exact rational from "a", "a/b" or an integer; throws ParseError.
Rational parse_rational(const std::string& text);

std::vector<std::string> catalog_names();
/// Throws ParseError for an unknown name.
ProblemFile catalog_problem(const std::string& name);

}  // namespace tbo
