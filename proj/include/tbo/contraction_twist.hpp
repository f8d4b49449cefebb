#pragma once

// Loci contracted on either side of a crepant crossing, classes of twisted
// structure sheaves supported on them, the equivariant Euler pairing and
// twist operators acting on localized K-theory.

#include <cstdint>
#include <string>
#include <vector>

#include "tbo/bondal_orlov.hpp"

namespace tbo {

struct ExceptionalDatum {
  Side side = Side::Minus;
  std::vector<std::size_t> rays;      // rays spanning the weighted projective stack
  std::vector<Integer> weights;       // |D_i . e| over those rays
  Integer saturation_index = 1;       // index of <D_i : i in M_0> in the wall lattice
  bool quotient_rank_ok = false;      // <D_i : i in M_0> has rank r - 1
  std::size_t base_dim = 0;           // dimension of the base the locus fibres over

  /// The twist identities are only asserted for saturated walls over a point.
  bool supported() const { return quotient_rank_ok && saturation_index == 1 && base_dim == 0; }
  std::string unsupported_reason() const;
};

/// Plus: weights a = (D_i . e)_{i in M_+}; Minus: weights b = (-D_i . e)_{i in M_-}.
ExceptionalDatum exceptional_data(const WallCrossing& wc, Side side);

/// Some p with p . e = -1; the degree-one lift used for O(1) on the minus-side locus.
IntVector degree_one_lift(const WallCrossing& wc);

/// Class of the structure sheaf of the minus-side locus twisted by O(k):
/// L(k p1) * prod_{i in M_+} (1 - S_i). Throws SaturationFailure when unsupported.
LocalizedClass substack_class(const CrossingContext& ctx, std::int64_t k);

/// chi(A, B): sum over fixed points of the invariant part of (A^dual B) / Euler class, at s.
/// Throws EulerClassVanishes.
std::uint64_t euler_pairing(const ToricSpace& X, const LocalizedClass& A, const LocalizedClass& B,
                            const SpecializationPoint& s);

struct TwistOperator {
  std::int64_t k = 0;
  Side side = Side::Minus;
  LocalizedClass W;
  TransformMatrix matrix;  // E -> E - chi(W, E) W in the minus-side basis
};

TwistOperator twist_matrix(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s);

struct CompositeCheck {
  std::string identity;
  bool pass = false;
};

struct CompositeReport {
  bool skipped = false;
  std::string reason;
  ExceptionalDatum minus_locus;
  ExceptionalDatum plus_locus;
  std::vector<CompositeCheck> checks;

  bool all_pass() const;
};

/// BO'_{-k-1} BO_{(N-1)+k} = T_k^{-1} for k in [-(N-1), N-1], FM' FM = T_{-1}^{-1} ... T_{-(N-1)}^{-1},
/// and both again on the reversed crossing.
CompositeReport verify_composites(const CrossingContext& ctx, const SpecializationPoint& s);

}  // namespace tbo
