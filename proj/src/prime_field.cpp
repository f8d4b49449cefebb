#include "tbo/prime_field.hpp"

#include <stdexcept>

#include "tbo/error.hpp"

namespace tbo {

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw Error(ErrorKind::DivisionByZeroAtSpecialization, "inverse of zero in F_p");
  return pow(a, p_ - 2);
}

std::uint64_t PrimeField::from_integer(const Integer& x) const {
  if (x.fits_slong_p()) return from_int(x.get_si());
  Integer r;
  const Integer p(static_cast<unsigned long>(p_));
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t());
  return r.get_ui();
}

std::uint64_t PrimeField::from_rational(const Rational& x) const {
  if (x.get_den() == 1) return from_integer(x.get_num());
  return mul(from_integer(x.get_num()), inv(from_integer(x.get_den())));
}

std::uint64_t PrimeField::from_int(std::int64_t x) const {
  if (x >= 0) return static_cast<std::uint64_t>(x) % p_;
  return neg((static_cast<std::uint64_t>(-(x + 1)) + 1) % p_);
}

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
  std::uint64_t r = 1 % n;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    fs.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // these bases are deterministic for all n < 2^64
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t random_prime_with_root(std::uint64_t L, unsigned bits, std::mt19937_64& rng) {
  if (L == 0) throw std::invalid_argument("random_prime_with_root: L = 0");
  if (bits < 8 || bits > 62) throw std::invalid_argument("prime size must be between 8 and 62 bits");
  const std::uint64_t hi = (std::uint64_t{1} << bits) - 1;
  const std::uint64_t lo = std::uint64_t{1} << (bits - 1);
  if (L >= lo) throw std::invalid_argument("root order too large for the prime size");
  std::uniform_int_distribution<std::uint64_t> dist(lo / L, (hi - 1) / L);
  for (;;) {
    const std::uint64_t p = dist(rng) * L + 1;
    if (p > 3 && is_prime_u64(p)) return p;
  }
}

std::uint64_t primitive_root_of_unity(const PrimeField& F, std::uint64_t L, std::mt19937_64& rng) {
  const std::uint64_t p = F.modulus();
  if ((p - 1) % L != 0) throw std::invalid_argument("L does not divide p - 1");
  const auto factors = prime_factors(L);
  std::uniform_int_distribution<std::uint64_t> dist(2, p - 1);
  for (;;) {
    const std::uint64_t z = F.pow(dist(rng), (p - 1) / L);
    bool primitive = true;
    for (auto q : factors)
      if (F.pow(z, L / q) == 1) primitive = false;
    if (primitive) return z;
  }
}

FpMatrix fp_identity(std::size_t n) {
  FpMatrix I(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

FpMatrix fp_multiply(const PrimeField& F, const FpMatrix& A, const FpMatrix& B) {
  const std::size_t n = A.size(), k = B.size(), m = B.empty() ? 0 : B[0].size();
  FpMatrix C(n, std::vector<std::uint64_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (A[i].size() != k) throw Error(ErrorKind::DimensionMismatch, "F_p matrix product");
    for (std::size_t t = 0; t < k; ++t) {
      if (A[i][t] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][t], B[t][j]));
    }
  }
  return C;
}

std::optional<FpMatrix> fp_inverse(const PrimeField& F, const FpMatrix& A) {
  const std::size_t n = A.size();
  FpMatrix M = A, I = fp_identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t r = c; r < n; ++r)
      if (M[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == n) return std::nullopt;
    std::swap(M[piv], M[c]);
    std::swap(I[piv], I[c]);
    const std::uint64_t s = F.inv(M[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      M[c][j] = F.mul(M[c][j], s);
      I[c][j] = F.mul(I[c][j], s);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || M[r][c] == 0) continue;
      const std::uint64_t f = M[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        M[r][j] = F.sub(M[r][j], F.mul(f, M[c][j]));
        I[r][j] = F.sub(I[r][j], F.mul(f, I[c][j]));
      }
    }
  }
  return I;
}

}  // namespace tbo
