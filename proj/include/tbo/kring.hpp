#pragma once

// Laurent combinations with rational exponents, Laurent polynomials in an
// auxiliary variable t, and exact evaluation over F_p.

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "tbo/lattice.hpp"
#include "tbo/prime_field.hpp"

namespace tbo {

/// Finite sum of c_q * e^q, q in Q^dim. Exponents share one common denominator.
class KElement {
 public:
  KElement() = default;
  explicit KElement(std::size_t dim) : dim_(dim) {}

  static KElement constant(std::size_t dim, const Rational& c);
  static KElement monomial(const RatVector& exponent, const Rational& coeff = 1);
  static KElement monomial(const IntVector& exponent, const Rational& coeff = 1);

  std::size_t dim() const { return dim_; }
  const Integer& denominator() const { return den_; }
  /// Numerator exponents (exponent = numerator / denominator) with coefficients.
  const std::map<IntVector, Rational>& numerators() const { return terms_; }
  std::vector<std::pair<RatVector, Rational>> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  /// Coefficient of e^0.
  Rational constant_term() const;

  KElement operator+(const KElement& o) const;
  KElement operator-(const KElement& o) const;
  KElement operator-() const;
  KElement operator*(const KElement& o) const;
  KElement operator*(const Rational& c) const;
  KElement& operator+=(const KElement& o) { return *this = *this + o; }
  KElement& operator-=(const KElement& o) { return *this = *this - o; }
  KElement& operator*=(const KElement& o) { return *this = *this * o; }
  bool operator==(const KElement& o) const = default;

  /// Non-negative powers of anything; negative powers of monomials only.
  KElement pow(std::int64_t n) const;
  /// Exponents negated (the dual of a sum of characters).
  KElement dual() const;
  /// Exponent q goes to A*q + b; the result lives in dimension A.rows().
  KElement map_exponents(const RatMatrix& A, const RatVector& b) const;
  KElement map_exponents(const RatMatrix& A) const;

  /// e.g. "1 - e^(1,0,1/2)"; deterministic.
  std::string to_string() const;

 private:
  void normalize();

  std::size_t dim_ = 0;
  Integer den_ = 1;
  std::map<IntVector, Rational> terms_;
};

/// Laurent polynomial in t with KElement coefficients.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(std::size_t dim) : dim_(dim) {}
  static TPoly from(const KElement& c, std::int64_t t_power = 0);

  std::size_t dim() const { return dim_; }
  const std::map<std::int64_t, KElement>& coefficients() const { return coeffs_; }
  KElement coefficient(std::int64_t n) const;

  TPoly operator+(const TPoly& o) const;
  TPoly operator-(const TPoly& o) const;
  TPoly operator*(const TPoly& o) const;
  TPoly operator*(const KElement& c) const;
  /// Multiply by t^n.
  TPoly shift(std::int64_t n) const;
  bool operator==(const TPoly& o) const = default;

 private:
  void add_term(std::int64_t n, const KElement& c);

  std::size_t dim_ = 0;
  std::map<std::int64_t, KElement> coeffs_;
};

/// sum_{s=0}^{l-1} t^{-s}, i.e. (1 - t^{-l}) / (1 - t^{-1}).
TPoly geometric_quotient(std::int64_t l, std::size_t dim);

/// sum over n = 0 mod l of coeff_n(P) * B^{n/l}: the average of P over t in { zeta B^{1/l} }.
KElement root_of_unity_filter(const TPoly& P, std::int64_t l, const KElement& base);

/// Evaluation point: e^{lambda_i} -> y_i^L in F_p, p = 1 (mod L), with a primitive L-th root zeta.
struct SpecializationPoint {
  PrimeField field;
  std::uint64_t L = 1;
  std::uint64_t zeta = 1;
  std::vector<std::uint64_t> y;

  /// Value of e^{num/den}; throws DenominatorNotDividingL.
  std::uint64_t monomial(const IntVector& numerator, const Integer& den) const;
  /// The point y_i * zeta^{v_i}: same values on integral exponents, twisted by the character v.
  SpecializationPoint twisted(const IntVector& v) const;
};

/// Fresh prime and coordinates; `dim` coordinates, all nonzero.
SpecializationPoint random_specialization(std::uint64_t L, std::size_t dim, std::mt19937_64& rng,
                                          unsigned prime_bits = 62);

/// Same prime, root and L; new coordinates.
SpecializationPoint resample(const SpecializationPoint& s, std::mt19937_64& rng);

std::uint64_t specialize(const KElement& x, const SpecializationPoint& s);

}  // namespace tbo
