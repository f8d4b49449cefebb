#pragma once

// Exact integer/rational linear algebra: Smith and Hermite normal forms,
// rational solving, primitive vectors, strict cone membership and lattices
// with rational generators.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tbo {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
std::string to_string(const IntVector& v);
std::string to_string(const RatVector& v);

RatVector to_rational(const IntVector& v);
Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);

// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntMatrix transpose() const;
  IntMatrix operator*(const IntMatrix& other) const;
  bool operator==(const IntMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

// Dense rational matrix, row-major.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  explicit RatMatrix(const IntMatrix& m);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVector apply(const RatVector& x) const;
  RatMatrix transpose() const;
  bool operator==(const RatMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// A = U * S * V with U, V unimodular and S diagonal, d_1 | d_2 | ... >= 0.
struct SnfDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

SnfDecomposition smith_normal_form(const IntMatrix& A);

/// Row-echelon (Hermite) basis of the lattice spanned by the rows of A.
/// Pivots are positive, entries above a pivot are reduced into [0, pivot).
/// Zero rows are dropped; pivot_cols[i] is the pivot column of row i.
struct HermiteBasis {
  IntMatrix H;
  std::vector<std::size_t> pivot_cols;
};

HermiteBasis hermite_row_basis(const IntMatrix& A);

/// Reduce x modulo the lattice of `basis`; the result is canonical for the coset.
IntVector hermite_reduce(const HermiteBasis& basis, IntVector x);

Integer determinant(const IntMatrix& A);
std::size_t rank(const RatMatrix& A);
std::size_t rank(const IntMatrix& A);
std::optional<RatMatrix> inverse(const RatMatrix& A);

/// Some x with A x = b, or nullopt when inconsistent.
std::optional<RatVector> solve_rational(const RatMatrix& A, const RatVector& b);
std::optional<RatVector> solve_rational(const IntMatrix& A, const RatVector& b);

/// Integer w = lambda * v with lambda > 0 and gcd(w) = 1.
IntVector primitive_vector(const RatVector& v);
IntVector primitive_vector(const IntVector& v);

/// Primitive integer normal of the hyperplane spanned by r-1 independent vectors in Z^r.
IntVector hyperplane_normal(const std::vector<IntVector>& spanning, std::size_t r);

/// omega = sum a_i g_i with every a_i > 0 solvable over Q. `generators` may be empty
/// (then only omega = 0 qualifies).
bool in_strict_cone(const std::vector<IntVector>& generators, const RatVector& omega);

/// Same question for omega(eps) = base + eps * direction, decided for all
/// sufficiently small eps > 0.
bool in_strict_cone(const std::vector<IntVector>& generators, const RatVector& base,
                    const RatVector& direction);

/// Index of <sub> inside (Q-span of lattice_gens) ∩ Z^r; 1 means saturated.
Integer saturation_index(const std::vector<IntVector>& sub,
                         const std::vector<IntVector>& lattice_gens, std::size_t dim);

/// Full-rank lattice Z^n + sum Z g_k with rational generators g_k. Membership is exact.
class RationalLattice {
 public:
  RationalLattice() = default;
  RationalLattice(std::size_t dim, const std::vector<RatVector>& extra_generators);

  std::size_t dim() const { return dim_; }
  const Integer& denominator() const { return denom_; }
  bool contains(const RatVector& q) const;
  /// Index of Z^n in the lattice.
  Integer index_over_integers() const;
  bool contains_lattice(const RationalLattice& other) const;
  const std::vector<RatVector>& generators() const { return gens_; }

 private:
  std::size_t dim_ = 0;
  Integer denom_ = 1;
  std::vector<RatVector> gens_;
  HermiteBasis scaled_;  // basis of denom_ * lattice
};

}  // namespace tbo
