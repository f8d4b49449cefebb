#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "tbo/error.hpp"
#include "tbo/lattice.hpp"

using namespace tbo;

namespace {

IntMatrix mat(std::vector<std::vector<long>> rows) {
  IntMatrix M(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
  return M;
}

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

void check_snf(const IntMatrix& A) {
  const auto snf = smith_normal_form(A);
  CHECK(snf.U * snf.S * snf.V == A);
  CHECK(abs(determinant(snf.U)) == 1);
  CHECK(abs(determinant(snf.V)) == 1);
  for (std::size_t i = 0; i < snf.S.rows(); ++i)
    for (std::size_t j = 0; j < snf.S.cols(); ++j)
      if (i != j) CHECK(snf.S(i, j) == 0);
  const auto d = snf.diagonal();
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i] >= 0);
    if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
    if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
  }
}

// gcd of all k x k minors, computed by brute force over row and column subsets
Integer minor_gcd(const IntMatrix& A, std::size_t k) {
  Integer g = 0;
  const std::size_t m = A.rows(), n = A.cols();
  for (unsigned rm = 0; rm < (1u << m); ++rm) {
    if (static_cast<std::size_t>(__builtin_popcount(rm)) != k) continue;
    for (unsigned cm = 0; cm < (1u << n); ++cm) {
      if (static_cast<std::size_t>(__builtin_popcount(cm)) != k) continue;
      IntMatrix sub(k, k);
      std::size_t r = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (!(rm >> i & 1)) continue;
        std::size_t c = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (cm >> j & 1) sub(r, c++) = A(i, j);
        ++r;
      }
      Integer d = determinant(sub);
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    }
  }
  return g;
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  auto I = smith_normal_form(IntMatrix::identity(2));
  CHECK(I.S == IntMatrix::identity(2));
  CHECK(smith_normal_form(mat({{2}})).S == mat({{2}}));
  auto s = smith_normal_form(mat({{2, 4}, {6, 8}}));
  CHECK(s.S == mat({{2, 0}, {0, 4}}));
  check_snf(mat({{2, 4}, {6, 8}}));
  check_snf(mat({{0, 0}, {0, 0}}));
  check_snf(mat({{1, 1, -1, -1}}));
  check_snf(mat({{1, 1}, {1, -1}, {3, 5}}));
}

TEST_CASE("smith invariant factors match minor gcds on random matrices") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> entry(-6, 6), size(1, 4);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = size(rng), n = size(rng);
    IntMatrix A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = entry(rng);
    check_snf(A);
    const auto d = smith_normal_form(A).diagonal();
    Integer prod = 1;
    for (std::size_t k = 1; k <= d.size(); ++k) {
      prod *= d[k - 1];
      CHECK(prod == minor_gcd(A, k));
    }
  }
}

TEST_CASE("hermite basis reduces cosets canonically") {
  auto H = hermite_row_basis(mat({{2, 0}, {1, 3}, {0, 6}}));
  CHECK(H.H.rows() == 2);
  CHECK(abs(determinant(H.H)) == 6);
  // x and x + lattice vector reduce to the same representative
  IntVector x = iv({5, 7});
  IntVector y = iv({5 + 2 - 3, 7 - 9});
  CHECK(hermite_reduce(H, x) == hermite_reduce(H, y));
  CHECK(hermite_reduce(H, iv({1, 3})) == iv({0, 0}));
}

TEST_CASE("solve_rational") {
  auto x = solve_rational(IntMatrix::identity(2), rv({3, Rational(1, 2)}));
  REQUIRE(x);
  CHECK(*x == rv({3, Rational(1, 2)}));
  auto h = solve_rational(mat({{-2}}), rv({1}));
  REQUIRE(h);
  CHECK((*h)[0] == Rational(-1, 2));
  CHECK_FALSE(solve_rational(mat({{1, 1}, {2, 2}}), rv({1, 3})));
}

TEST_CASE("primitive vectors") {
  CHECK(primitive_vector(iv({2, 4})) == iv({1, 2}));
  CHECK(primitive_vector(rv({Rational(1, 3), Rational(-2, 3)})) == iv({1, -2}));
  CHECK(primitive_vector(iv({5})) == iv({1}));
  CHECK_THROWS_AS(primitive_vector(iv({0, 0})), Error);
  try {
    primitive_vector(iv({0}));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroVector);
  }
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(-9, 9), pos(1, 9);
  for (int t = 0; t < 100; ++t) {
    RatVector v{Rational(d(rng), pos(rng)), Rational(d(rng), pos(rng)), Rational(1, pos(rng))};
    const IntVector w = primitive_vector(v);
    const Rational scale(pos(rng), pos(rng));
    RatVector sv;
    for (auto& q : v) sv.push_back(q * scale);
    CHECK(primitive_vector(sv) == w);
    CHECK(primitive_vector(w) == w);
  }
}

TEST_CASE("hyperplane normals") {
  CHECK(hyperplane_normal({}, 1) == iv({1}));
  CHECK(hyperplane_normal({iv({1, 1})}, 2) == iv({1, -1}));
  auto n = hyperplane_normal({iv({1, 0, 2}), iv({0, 1, 3})}, 3);
  CHECK(dot(n, iv({1, 0, 2})) == 0);
  CHECK(dot(n, iv({0, 1, 3})) == 0);
  CHECK_THROWS_AS(hyperplane_normal({iv({1, 1}), iv({2, 2})}, 3), Error);
}

namespace {

// omega in the closed cone of gens (2D), by Caratheodory: some one or two generators suffice
bool in_closed_cone_2d(const std::vector<IntVector>& gens, const RatVector& w) {
  if (w[0] == 0 && w[1] == 0) return true;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    // single generator: w = a g, a >= 0
    const Rational cross = w[0] * gens[i][1] - w[1] * gens[i][0];
    const Rational proj = w[0] * gens[i][0] + w[1] * gens[i][1];
    if (cross == 0 && proj > 0) return true;
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const Integer det = gens[i][0] * gens[j][1] - gens[i][1] * gens[j][0];
      if (det == 0) continue;
      const Rational a = (w[0] * gens[j][1] - w[1] * gens[j][0]) / Rational(det);
      const Rational b = (gens[i][0] * w[1] - gens[i][1] * w[0]) / Rational(det);
      if (a >= 0 && b >= 0) return true;
    }
  }
  return false;
}

// strict membership: some t > 0 on a rational grid with omega - t*sum(g) in the closed cone
bool strict_cone_grid(const std::vector<IntVector>& gens, const RatVector& w) {
  if (gens.empty()) return w[0] == 0 && w[1] == 0;
  Rational s0 = 0, s1 = 0;
  for (const auto& g : gens) {
    s0 += g[0];
    s1 += g[1];
  }
  for (int k = 1; k <= 2000; ++k) {
    const Rational t(1, k);
    if (in_closed_cone_2d(gens, {w[0] - t * s0, w[1] - t * s1})) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("strict cone membership") {
  CHECK(in_strict_cone({iv({1})}, rv({1})));
  CHECK_FALSE(in_strict_cone({iv({1})}, rv({-1})));
  CHECK(in_strict_cone({iv({1, 0}), iv({1, 1})}, rv({2, 1})));
  CHECK_FALSE(in_strict_cone({iv({1, 0}), iv({1, 1})}, rv({1, 0})));
  CHECK(in_strict_cone({}, rv({0, 0})));
  CHECK_FALSE(in_strict_cone({}, rv({1, 0})));
  // opposite generators: the strict span is the whole line
  CHECK(in_strict_cone({iv({1}), iv({-1})}, rv({0})));
  CHECK(in_strict_cone({iv({1}), iv({-1})}, rv({-3})));
  // infinitesimal perturbation decides boundary points
  CHECK(in_strict_cone({iv({1, 0}), iv({1, -1})}, rv({1, 0}), rv({0, -1})));
  CHECK_FALSE(in_strict_cone({iv({1, 0}), iv({1, -1})}, rv({1, 0}), rv({0, 1})));
  CHECK_FALSE(in_strict_cone({iv({1, 0})}, rv({1, 0}), rv({0, -1})));
}

TEST_CASE("strict cone membership agrees with grid search in 2D") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(-3, 3), cnt(0, 4);
  int positives = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<IntVector> gens;
    const int n = cnt(rng);
    for (int i = 0; i < n; ++i) {
      IntVector g = iv({e(rng), e(rng)});
      if (g[0] == 0 && g[1] == 0) g[0] = 1;
      gens.push_back(g);
    }
    RatVector w{Rational(e(rng)), Rational(e(rng))};
    const bool lp = in_strict_cone(gens, w);
    CHECK(lp == strict_cone_grid(gens, w));
    positives += lp;
    // adding a generator that is itself a positive combination keeps membership
    if (lp && !gens.empty()) {
      auto more = gens;
      more.push_back(IntVector{gens[0][0] + gens.back()[0], gens[0][1] + gens.back()[1]});
      if (!(more.back()[0] == 0 && more.back()[1] == 0)) CHECK(in_strict_cone(more, w));
    }
  }
  CHECK(positives > 30);
}

TEST_CASE("saturation index") {
  CHECK(saturation_index({iv({1, 0})}, {iv({1, 0})}, 2) == 1);
  CHECK(saturation_index({iv({2, 0})}, {iv({1, 0})}, 2) == 2);
  CHECK(saturation_index({iv({1, 1}), iv({1, -1})}, {iv({1, 0}), iv({0, 1})}, 2) == 2);
  CHECK_THROWS_AS(saturation_index({iv({1, 0})}, {iv({0, 1})}, 2), Error);
}

TEST_CASE("rational lattices") {
  RationalLattice L(2, {rv({Rational(1, 2), Rational(1, 2)})});
  CHECK(L.index_over_integers() == 2);
  CHECK(L.contains(rv({Rational(3, 2), Rational(-1, 2)})));
  CHECK_FALSE(L.contains(rv({Rational(1, 2), 0})));
  CHECK(L.contains(rv({1, 0})));
  RationalLattice Z(2, {});
  CHECK(Z.index_over_integers() == 1);
  CHECK(L.contains_lattice(Z));
  CHECK_FALSE(Z.contains_lattice(L));
  RationalLattice T(1, {rv({Rational(1, 6)})});
  CHECK(T.index_over_integers() == 6);
  CHECK(T.contains(rv({Rational(5, 3)})));
}
