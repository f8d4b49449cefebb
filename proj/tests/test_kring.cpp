#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tbo/error.hpp"
#include "tbo/kring.hpp"

using namespace tbo;

namespace {

KElement mono(std::initializer_list<Rational> q, const Rational& c = 1) { return KElement::monomial(RatVector(q), c); }

KElement random_element(std::mt19937_64& rng, std::size_t dim, int den) {
  std::uniform_int_distribution<int> e(-3 * den, 3 * den), c(-4, 4), n(1, 4);
  KElement x(dim);
  const int terms = n(rng);
  for (int t = 0; t < terms; ++t) {
    RatVector q;
    for (std::size_t i = 0; i < dim; ++i) q.emplace_back(e(rng), den);
    for (auto& v : q) v.canonicalize();
    x += KElement::monomial(q, Rational(c(rng)));
  }
  return x;
}

TPoly random_tpoly(std::mt19937_64& rng, std::size_t dim) {
  std::uniform_int_distribution<int> deg(-6, 6), n(1, 5);
  TPoly P(dim);
  const int terms = n(rng);
  for (int t = 0; t < terms; ++t) P = P + TPoly::from(random_element(rng, dim, 1), deg(rng));
  return P;
}

}  // namespace

TEST_CASE("ring operations") {
  const KElement s = mono({1, 0});
  const KElement one = KElement::constant(2, 1);
  const KElement zero(2);
  CHECK(s + zero == s);
  CHECK((one - s) * (one + s) == one - s * s);
  CHECK(mono({Rational(1, 2), 0}) * mono({Rational(1, 2), 0}) == s);
  CHECK(s.pow(-2) * s.pow(2) == one);
  CHECK((one - s).pow(0) == one);
  CHECK(mono({Rational(2, 4), 1}).denominator() == 2);
  CHECK((s - s).is_zero());
  CHECK_THROWS_AS(s + KElement::constant(3, 1), Error);
  CHECK_THROWS_AS((one - s).pow(-1), Error);
  CHECK((one - s).dual() == one - mono({-1, 0}));
  CHECK((one - s).to_string() == "1 - e^(1, 0)");
  CHECK((one - s).constant_term() == 1);
}

TEST_CASE("exponent maps") {
  RatMatrix A(1, 2);
  A(0, 0) = Rational(1, 2);
  A(0, 1) = 1;
  const KElement x = mono({2, 1}, 3) + KElement::constant(2, 1);
  CHECK(x.map_exponents(A) == mono({2}, 3) + KElement::constant(1, 1));
  CHECK(x.map_exponents(A, {Rational(1, 3)}) == mono({Rational(7, 3)}, 3) + mono({Rational(1, 3)}));
}

TEST_CASE("geometric quotient") {
  CHECK(geometric_quotient(1, 1) == TPoly::from(KElement::constant(1, 1)));
  CHECK(geometric_quotient(2, 1) == TPoly::from(KElement::constant(1, 1)) + TPoly::from(KElement::constant(1, 1), -1));
  CHECK(geometric_quotient(3, 1).coefficients().size() == 3);
  CHECK_THROWS_AS(geometric_quotient(0, 1), Error);
  const TPoly one = TPoly::from(KElement::constant(2, 1));
  for (int l = 1; l <= 120; ++l) {
    const TPoly lhs = geometric_quotient(l, 2) * (one - one.shift(-1));
    CHECK(lhs == one - one.shift(-l));
  }
}

TEST_CASE("root of unity filter examples") {
  const KElement B = mono({1});
  const TPoly t = TPoly::from(KElement::constant(1, 1), 1);
  CHECK(root_of_unity_filter(t.shift(2), 3, B) == B);
  CHECK(root_of_unity_filter(t, 2, B).is_zero());
  const TPoly P = TPoly::from(KElement::constant(1, 3), -2) + TPoly::from(KElement::constant(1, 5), 3) +
                  TPoly::from(KElement::constant(1, 7), 4);
  CHECK(root_of_unity_filter(P, 2, B) == B.pow(-1) * Rational(3) + B.pow(2) * Rational(7));
  CHECK_THROWS_AS(root_of_unity_filter(P, 2, B + KElement::constant(1, 1)), Error);
  CHECK_THROWS_AS(root_of_unity_filter(P, 0, B), Error);
}

TEST_CASE("filter shifts by the base") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> ll(1, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const TPoly P = random_tpoly(rng, 2);
    const int l = ll(rng);
    const KElement B = random_element(rng, 2, 1);
    const KElement base = B.is_monomial() ? B : mono({1, -1});
    CHECK(root_of_unity_filter(P.shift(l), l, base) == base * root_of_unity_filter(P, l, base));
  }
}

TEST_CASE("filter equals the numeric average over roots of unity") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> ll(1, 6), b(-3, 3);
  const std::uint64_t L = 60;
  const SpecializationPoint s0 = random_specialization(L, 2, rng);
  const PrimeField& F = s0.field;
  for (int trial = 0; trial < 100; ++trial) {
    const SpecializationPoint s = resample(s0, rng);
    const TPoly P = random_tpoly(rng, 2);
    const int l = ll(rng);
    const RatVector bexp{Rational(b(rng)), Rational(b(rng))};
    const KElement B = KElement::monomial(bexp);
    RatVector root_exp = bexp;
    for (auto& q : root_exp) q /= l;
    const std::uint64_t root = specialize(KElement::monomial(root_exp), s);
    const std::uint64_t zl = F.pow(s.zeta, L / l);
    std::uint64_t avg = 0;
    for (int j = 0; j < l; ++j) {
      const std::uint64_t tval = F.mul(F.pow(zl, j), root);
      for (const auto& [n, c] : P.coefficients()) {
        const std::uint64_t tn = n >= 0 ? F.pow(tval, n) : F.inv(F.pow(tval, -n));
        avg = F.add(avg, F.mul(specialize(c, s), tn));
      }
    }
    avg = F.div(avg, l);
    CHECK(specialize(root_of_unity_filter(P, l, B), s) == avg);
  }
}

TEST_CASE("specialization is a ring homomorphism") {
  std::mt19937_64 rng(23);
  const SpecializationPoint s0 = random_specialization(12, 3, rng);
  const PrimeField& F = s0.field;
  CHECK(specialize(KElement::constant(3, 1), s0) == 1);
  CHECK(specialize(mono({1, 0, 0}) * mono({-1, 0, 0}), s0) == 1);
  for (int trial = 0; trial < 150; ++trial) {
    const SpecializationPoint s = resample(s0, rng);
    const KElement a = random_element(rng, 3, 6), b = random_element(rng, 3, 4), c = random_element(rng, 3, 3);
    CHECK(specialize(a * b, s) == F.mul(specialize(a, s), specialize(b, s)));
    CHECK(specialize(a + c, s) == F.add(specialize(a, s), specialize(c, s)));
    CHECK(specialize((a + b) * c, s) == F.mul(F.add(specialize(a, s), specialize(b, s)), specialize(c, s)));
  }
  CHECK_THROWS_AS(specialize(mono({Rational(1, 5), 0, 0}), s0), Error);
}

TEST_CASE("twisted points agree on integral exponents") {
  std::mt19937_64 rng(29);
  const SpecializationPoint s = random_specialization(6, 2, rng);
  const SpecializationPoint t = s.twisted({Integer(1), Integer(4)});
  const KElement integral = mono({2, -1}) + mono({0, 3}, 5);
  CHECK(specialize(integral, s) == specialize(integral, t));
  const KElement half = mono({Rational(1, 2), 0});
  CHECK(specialize(half, t) == s.field.mul(specialize(half, s), s.field.pow(s.zeta, 3)));
}

TEST_CASE("primes and roots") {
  std::mt19937_64 rng(31);
  for (std::uint64_t L : {1ull, 2ull, 6ull, 12ull, 60ull}) {
    const std::uint64_t p = random_prime_with_root(L, 62, rng);
    CHECK(is_prime_u64(p));
    CHECK((p - 1) % L == 0);
    const PrimeField F(p);
    const std::uint64_t z = primitive_root_of_unity(F, L, rng);
    CHECK(F.pow(z, L) == 1);
    for (std::uint64_t d = 1; d < L; ++d) CHECK(F.pow(z, d) != 1);
  }
  CHECK(is_prime_u64(2305843009213693951ull));
  CHECK_FALSE(is_prime_u64(2305843009213693953ull));
  const PrimeField F(101);
  CHECK(F.from_rational(Rational(1, 2)) == 51);
  CHECK(F.from_int(-1) == 100);
  CHECK_THROWS_AS(F.inv(0), Error);
}
