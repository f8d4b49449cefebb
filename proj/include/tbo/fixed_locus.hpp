#pragma once

// Torus fixed points of a toric stack: isotropy groups, character lifts,
// restriction of equivariant line bundles, Euler classes of normal bundles,
// the localized basis and decomposition in it.

#include <cstdint>
#include <optional>
#include <vector>

#include "tbo/git.hpp"
#include "tbo/kring.hpp"

namespace tbo {

struct CharacterWithLift {
  std::vector<Integer> residues;  // coordinates in the invariant-factor decomposition
  IntVector rho_hat;              // canonical lift in the character lattice
};

struct FixedPoint {
  Anticone delta;
  IntMatrix M;                        // rows D_i, i in delta
  Integer group_order;
  std::vector<Integer> invariant_factors;
  RatMatrix restriction;              // (p, mu) -> mu - C p, torus_dim x (r + torus_dim)
  RationalLattice admissible;         // exponents of genuine restrictions
  std::vector<CharacterWithLift> characters;
  std::vector<IntVector> dual_characters;  // v in Z^m, one per character of admissible / Z^m
  KElement euler;                          // prod_{j not in delta} (1 - S_j) restricted here
};

/// A toric stack together with how its rays carry torus weights.
/// Global classes live in exponent space Z^r (+) Z^torus_dim: (p, mu) means L(p) e^mu.
struct ToricSpace {
  GitDatum datum;
  std::vector<long> slot;   // torus coordinate of each ray, or -1
  std::size_t torus_dim = 0;
  std::vector<FixedPoint> fixed_points;

  std::size_t global_dim() const { return datum.r + torus_dim; }
  /// R_i = L(D_i) e^{lambda_slot(i)}.
  KElement R(std::size_t i) const;
  KElement S(std::size_t i) const;
  KElement line(const IntVector& p) const;  // L(p)
  std::optional<std::size_t> index_of(const Anticone& delta) const;
  std::size_t basis_size() const;
};

/// slot = identity, torus_dim = m.
ToricSpace make_space(const GitDatum& d);
ToricSpace make_space(const GitDatum& d, std::vector<long> slot, std::size_t torus_dim);

/// Throws NotMinimal.
FixedPoint isotropy(const ToricSpace& X, const Anticone& delta);

KElement restrict_line(const FixedPoint& fp, const IntVector& p, const IntVector& mu);
KElement restrict_global(const FixedPoint& fp, const KElement& global);
const KElement& normal_euler(const ToricSpace& X, const FixedPoint& fp);

enum class Side { Plus, Minus, Tilde };
const char* to_string(Side s);

struct LocalizedClass {
  Side side = Side::Minus;
  std::vector<KElement> restrictions;  // per fixed point, in the space's order
  std::optional<KElement> global;      // a Laurent expression it came from, if any
  bool genuine = false;
};

struct BasisLabel {
  std::size_t point = 0;
  std::size_t character = 0;
};
std::vector<BasisLabel> basis_labels(const ToricSpace& X);

/// Restrictions of a global class at every fixed point.
LocalizedClass localize(const ToricSpace& X, Side side, const KElement& global);
bool is_genuine(const ToricSpace& X, const LocalizedClass& c);

/// Global class L(rho_hat) * prod_{i not in delta} (1 - S_i).
KElement basis_global(const ToricSpace& X, std::size_t point, std::size_t character);
LocalizedClass basis_class(const ToricSpace& X, Side side, std::size_t point, std::size_t character);

/// Coefficients in the localized basis, specialized at s (basis_labels order).
/// Throws NotAdmissible or DivisionByZeroAtSpecialization.
std::vector<std::uint64_t> decompose_in_basis(const ToricSpace& X, const LocalizedClass& c,
                                              const SpecializationPoint& s);

/// Same, for restrictions already evaluated at every twisted point: values[point][v] is the
/// restriction at that point evaluated at s.twisted(dual_characters[v]).
std::vector<std::uint64_t> decompose_values(const ToricSpace& X,
                                            const std::vector<std::vector<std::uint64_t>>& values,
                                            const SpecializationPoint& s);

/// Evaluation of a restriction at every twisted point of one fixed point.
std::vector<std::uint64_t> twisted_values(const FixedPoint& fp, const KElement& x, const SpecializationPoint& s);

/// Specialized restriction matrix of the basis: rows are (point, twisted point), columns basis labels.
FpMatrix basis_restriction_matrix(const ToricSpace& X, const SpecializationPoint& s);

/// lcm of the isotropy orders.
std::uint64_t root_order(const ToricSpace& X);

}  // namespace tbo
