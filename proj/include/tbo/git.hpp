#pragma once

// GIT data (characters D_i of a torus K and a stability vector), standing
// assumption checks and anticone enumeration.

#include <optional>
#include <string>
#include <vector>

#include "tbo/lattice.hpp"

namespace tbo {

/// Zero-based sorted ray indices.
using Anticone = std::vector<std::size_t>;

std::string to_string(const Anticone& a);  // one-based, e.g. "{1,3}"

struct GitDatum {
  std::size_t r = 0;
  std::vector<IntVector> D;
  RatVector omega;
  /// Optional infinitesimal perturbation: the stability is omega + eps * omega_direction.
  RatVector omega_direction;

  std::size_t m() const { return D.size(); }
  /// Throws InvalidDatum on malformed shapes.
  void check_shape() const;
  /// omega (perturbed if a direction is set) lies in the strict cone of D_I.
  bool is_anticone(const Anticone& I) const;
  IntMatrix submatrix(const Anticone& I) const;  // rows D_i, i in I
};

struct AssumptionCheck {
  bool pass = true;
  std::optional<Anticone> witness;
};

struct ValidationReport {
  AssumptionCheck all_rays_anticone;   // the full index set is an anticone
  AssumptionCheck anticones_span;      // every anticone spans Q^r
  bool ok() const { return all_rays_anticone.pass && anticones_span.pass; }
};

ValidationReport validate(const GitDatum& d);

/// Size-r anticones with invertible D_delta, lexicographic; throws InvalidDatum if validation fails.
std::vector<Anticone> minimal_anticones(const GitDatum& d);

/// Every anticone, ordered by size then lexicographically; throws InvalidDatum if validation fails.
std::vector<Anticone> anticones(const GitDatum& d);

/// The minimal anticone sets at omega and omega2 coincide.
bool same_chamber(const GitDatum& d, const RatVector& omega2);

/// Rays i whose complement {1..m} minus {i} is not an anticone. Recorded only.
std::vector<std::size_t> extended_set(const GitDatum& d);

}  // namespace tbo
