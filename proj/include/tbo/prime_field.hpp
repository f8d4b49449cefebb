#pragma once

// Arithmetic in F_p for word-sized primes, dense matrices over F_p and
// random primes with prescribed roots of unity.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "tbo/lattice.hpp"

namespace tbo {

class PrimeField {
 public:
  PrimeField() = default;
  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t modulus() const { return p_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;  // p < 2^62, no overflow
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (p_ - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Throws DivisionByZeroAtSpecialization on zero.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }
  std::uint64_t from_integer(const Integer& x) const;
  std::uint64_t from_rational(const Rational& x) const;
  std::uint64_t from_int(std::int64_t x) const;

 private:
  std::uint64_t p_ = 2;
};

bool is_prime_u64(std::uint64_t n);

/// Random prime p < 2^bits with p = 1 (mod L).
std::uint64_t random_prime_with_root(std::uint64_t L, unsigned bits, std::mt19937_64& rng);

/// A primitive L-th root of unity in F_p (requires L | p-1).
std::uint64_t primitive_root_of_unity(const PrimeField& F, std::uint64_t L, std::mt19937_64& rng);

using FpMatrix = std::vector<std::vector<std::uint64_t>>;

FpMatrix fp_identity(std::size_t n);
FpMatrix fp_multiply(const PrimeField& F, const FpMatrix& A, const FpMatrix& B);
std::optional<FpMatrix> fp_inverse(const PrimeField& F, const FpMatrix& A);

}  // namespace tbo
