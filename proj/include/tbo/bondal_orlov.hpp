#pragma once

// Transforms between the localized K-theory of the two sides of a crepant
// wall crossing: the closed formula, the blow-up computation it is checked
// against, and transform matrices over F_p.

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "tbo/fixed_locus.hpp"
#include "tbo/wall.hpp"

namespace tbo {

struct CrossingCache;

struct CrossingContext {
  WallCrossing wc;
  BlowupDatum blowup;
  ToricSpace minus;
  ToricSpace plus;
  ToricSpace tilde;  // the extra ray carries no torus weight
  std::vector<TildeFixedPoint> tilde_points;  // aligned with tilde.fixed_points
  std::uint64_t root_order = 1;               // lcm of all isotropy orders
  std::shared_ptr<CrossingCache> cache;       // memoized images and the reversed context

  std::size_t torus_dim() const { return wc.m(); }
};

/// Throws NotCrepant.
CrossingContext make_context(const WallCrossing& wc);
/// Context of the crossing read in the opposite direction; built once and shared.
const CrossingContext& reversed_context(const CrossingContext& ctx);

/// Image of a minus-side basis vector, as a global expression on the plus side.
KElement bo_global(const CrossingContext& ctx, std::int64_t k, std::size_t minus_point, std::size_t character);

/// Image of e_{delta,rho}; throws CharacterMismatch if c is not a character of delta.
LocalizedClass bo_apply(const CrossingContext& ctx, std::int64_t k, const Anticone& delta_minus,
                        const CharacterWithLift& c);
LocalizedClass bo_apply(const CrossingContext& ctx, std::int64_t k, std::size_t minus_point, std::size_t character);

/// Image computed through the blow-up: values[plus point][v] is the image restricted to that
/// point and evaluated at s.twisted(dual_characters[v]). Throws MissingGlobalExpression.
std::vector<std::vector<std::uint64_t>> bo_geometric(const CrossingContext& ctx, std::int64_t k,
                                                     const LocalizedClass& alpha, const SpecializationPoint& s);

/// Compare a plus-side class with values produced by bo_geometric.
bool agrees_with_values(const ToricSpace& X, const LocalizedClass& c,
                        const std::vector<std::vector<std::uint64_t>>& values, const SpecializationPoint& s);

/// Transform in the opposite direction (plus to minus), indexed by a plus-side basis vector.
LocalizedClass bo_prime_apply(const CrossingContext& ctx, std::int64_t k, std::size_t plus_point,
                              std::size_t character);

enum class Direction { MinusToPlus, PlusToMinus };

struct TransformMatrix {
  std::int64_t k = 0;
  Direction direction = Direction::MinusToPlus;
  SpecializationPoint specialization;
  FpMatrix entries;  // column b: coefficients of the image of basis vector b
};

/// Throws SingularAfterResampling or DivisionByZeroAtSpecialization.
TransformMatrix bo_matrix(const CrossingContext& ctx, std::int64_t k, Direction direction,
                          const SpecializationPoint& s);

/// Matrix of BO'_{(N-1)-k} times matrix of BO_k equals the identity.
bool verify_duality(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s);

/// A point where every Euler class (both sides and the blow-up, at every twisted point) is
/// nonzero. Deterministic in rng.
SpecializationPoint usable_specialization(const CrossingContext& ctx, std::mt19937_64& rng, unsigned prime_bits = 62);

}  // namespace tbo
