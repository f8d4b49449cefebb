#pragma once

// A single crepant wall crossing between two GIT chambers and the common
// blow-up datum with its extra ray.

#include <vector>

#include "tbo/git.hpp"

namespace tbo {

struct WallCrossing {
  GitDatum plus;
  GitDatum minus;
  IntVector e;          // primitive, e . omega_plus > 0
  RatVector omega0;     // where the segment meets the wall
  std::vector<Integer> pairing;  // D_i . e
  std::vector<std::size_t> M_plus, M_minus, M_zero;
  Integer N;            // sum of D_i . e over M_plus
  bool crepant = false;

  std::size_t r() const { return plus.r; }
  std::size_t m() const { return plus.m(); }
  Integer k(std::size_t i) const { return pairing[i] > 0 ? pairing[i] : Integer(0); }
  Integer l(std::size_t i) const { return pairing[i] < 0 ? Integer(-pairing[i]) : Integer(0); }
};

/// Throws SameChamber, NotAdjacent, InvalidDatum.
WallCrossing analyze_wall(const GitDatum& plus, const GitDatum& minus);

bool crepancy_check(const WallCrossing& wc);

/// The same crossing read from the other side: roles of plus and minus exchanged, e negated.
WallCrossing reversed(const WallCrossing& wc);

struct BlowupDatum {
  GitDatum tilde;        // omega0 (+) 0, perturbed towards -eps on the last coordinate
  GitDatum tilde_plus;   // (omega_plus, 1)
  GitDatum tilde_minus;  // (omega_minus, 1)
  std::size_t exceptional = 0;  // index of the extra ray (= m)
};

/// Throws NotCrepant.
BlowupDatum build_blowup(const WallCrossing& wc);

enum class TildeKind { Flopping, Nonflopping };

struct TildeFixedPoint {
  Anticone delta_tilde;
  TildeKind kind = TildeKind::Flopping;
  Anticone image_plus;   // minimal anticone of the plus side
  Anticone image_minus;  // minimal anticone of the minus side
};

std::vector<TildeFixedPoint> tilde_fixed_points(const WallCrossing& wc, const BlowupDatum& bd);

}  // namespace tbo
