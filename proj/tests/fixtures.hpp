#pragma once

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tbo/bondal_orlov.hpp"
#include "tbo/error.hpp"
#include "tbo/problem.hpp"

namespace fixtures {

inline tbo::GitDatum datum(std::size_t r, const std::vector<std::vector<long>>& rows, const std::vector<tbo::Rational>& omega) {
  tbo::GitDatum d;
  d.r = r;
  for (const auto& row : rows) {
    tbo::IntVector v;
    for (long x : row) v.emplace_back(x);
    d.D.push_back(v);
  }
  d.omega = omega;
  return d;
}

inline tbo::IntVector iv(std::initializer_list<long> xs) {
  tbo::IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline tbo::Anticone ac(std::initializer_list<std::size_t> one_based) {
  tbo::Anticone a;
  for (auto i : one_based) a.push_back(i - 1);
  return a;
}

// Contexts are expensive enough to share across test cases.
inline const tbo::CrossingContext& catalog_context(const std::string& name) {
  static std::map<std::string, tbo::CrossingContext> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    const auto p = tbo::catalog_problem(name);
    it = cache.emplace(name, tbo::make_context(tbo::analyze_wall(p.plus(), p.minus()))).first;
  }
  return it->second;
}

inline std::vector<tbo::SpecializationPoint> points(const tbo::CrossingContext& ctx, unsigned n, std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::vector<tbo::SpecializationPoint> out;
  for (unsigned i = 0; i < n; ++i) out.push_back(tbo::usable_specialization(ctx, rng));
  return out;
}

/// Kind of the Error thrown by f; fails the caller if nothing is thrown.
inline tbo::ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const tbo::Error& e) {
    return e.kind();
  }
  throw std::logic_error("no error raised");
}

}  // namespace fixtures
