#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "tbo/error.hpp"
#include "tbo/fixed_locus.hpp"

using namespace tbo;
using fixtures::ac;
using fixtures::datum;
using fixtures::iv;

namespace {

KElement mono(std::initializer_list<Rational> q) { return KElement::monomial(RatVector(q)); }
KElement one(std::size_t m) { return KElement::constant(m, 1); }

IntVector unit(std::size_t m, std::size_t i) {
  IntVector u(m, Integer(0));
  u[i] = 1;
  return u;
}

// Sum of coefficient times basis restriction, at every twisted point.
std::vector<std::vector<std::uint64_t>> rebuild(const ToricSpace& X, const std::vector<std::uint64_t>& coeffs,
                                                const SpecializationPoint& s) {
  const auto labels = basis_labels(X);
  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& fp : X.fixed_points) out.emplace_back(fp.dual_characters.size(), 0);
  for (std::size_t b = 0; b < labels.size(); ++b) {
    const auto c = basis_class(X, Side::Minus, labels[b].point, labels[b].character);
    for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
      const auto v = twisted_values(X.fixed_points[p], c.restrictions[p], s);
      for (std::size_t i = 0; i < v.size(); ++i) out[p][i] = s.field.add(out[p][i], s.field.mul(coeffs[b], v[i]));
    }
  }
  return out;
}

}  // namespace

TEST_CASE("isotropy groups") {
  const auto con = make_space(datum(1, {{1}, {1}, {-1}, {-1}}, {-1}));
  REQUIRE(con.fixed_points.size() == 2);
  CHECK(con.fixed_points[0].delta == ac({3}));
  CHECK(con.fixed_points[0].group_order == 1);

  const auto a1 = make_space(datum(1, {{1}, {1}, {-2}}, {-1}));
  REQUIRE(a1.fixed_points.size() == 1);
  CHECK(a1.fixed_points[0].group_order == 2);
  CHECK(a1.fixed_points[0].invariant_factors == std::vector<Integer>{2});

  const auto id = make_space(datum(2, {{1, 0}, {0, 1}, {-1, -1}}, {1, 2}));
  CHECK(isotropy(id, ac({1, 2})).group_order == 1);
  CHECK(fixtures::kind_of([&] { isotropy(id, ac({1, 3})); }) == ErrorKind::NotMinimal);

  // G = Z/2 x Z/3
  const auto six = make_space(datum(2, {{2, 0}, {0, 3}, {-1, -1}}, {1, 1}));
  REQUIRE(six.fixed_points.size() == 1);
  const auto& fp = six.fixed_points[0];
  CHECK(fp.group_order == 6);
  CHECK(fp.characters.size() == 6);
  CHECK(fp.dual_characters.size() == 6);
  for (std::size_t a = 0; a < fp.characters.size(); ++a)
    for (std::size_t b = a + 1; b < fp.characters.size(); ++b) CHECK(fp.characters[a].residues != fp.characters[b].residues);
}

TEST_CASE("restriction of line bundles") {
  const auto con = make_space(datum(1, {{1}, {1}, {-1}, {-1}}, {-1}));
  const auto& at3 = con.fixed_points[0];
  CHECK(restrict_line(at3, iv({1}), unit(4, 0)) == mono({1, 0, 1, 0}));
  CHECK(restrict_global(at3, con.R(2)) == one(4));

  const auto a1 = make_space(datum(1, {{1}, {1}, {-2}}, {-1}));
  const auto& w = a1.fixed_points[0];
  CHECK(restrict_line(w, iv({1}), unit(3, 0)) == mono({1, 0, Rational(1, 2)}));
  CHECK(w.admissible.contains(RatVector{1, 0, Rational(1, 2)}));
  CHECK_FALSE(w.admissible.contains(RatVector{Rational(1, 2), 0, 0}));

  // every ray in delta restricts to one, on every catalog side
  for (const auto& name : catalog_names()) {
    const auto& ctx = fixtures::catalog_context(name);
    for (const ToricSpace* X : {&ctx.minus, &ctx.plus, &ctx.tilde})
      for (const auto& fp : X->fixed_points)
        for (auto j : fp.delta)
          if (X->slot[j] >= 0) CHECK(restrict_global(fp, X->R(j)) == one(X->torus_dim));
  }
}

TEST_CASE("admissible lattices") {
  for (const auto& name : catalog_names()) {
    const auto& ctx = fixtures::catalog_context(name);
    for (const ToricSpace* X : {&ctx.minus, &ctx.plus, &ctx.tilde})
      for (const auto& fp : X->fixed_points) {
        const auto& lat = fp.admissible;
        for (std::size_t i = 0; i < X->torus_dim; ++i) CHECK(lat.contains(to_rational(unit(X->torus_dim, i))));
        CHECK(lat.index_over_integers() == fp.group_order);
        for (std::size_t j = 0; j < X->datum.m(); ++j)
          for (const auto& [q, c] : restrict_global(fp, X->S(j)).terms()) CHECK(lat.contains(q));
      }
  }
}

TEST_CASE("Euler classes of normal bundles") {
  const auto con = make_space(datum(1, {{1}, {1}, {-1}, {-1}}, {-1}));
  const KElement expect = (one(4) - mono({-1, 0, -1, 0})) * (one(4) - mono({0, -1, -1, 0})) * (one(4) - mono({0, 0, 1, -1}));
  CHECK(normal_euler(con, con.fixed_points[0]) == expect);

  const auto square = make_space(datum(2, {{1, 0}, {0, 1}}, {1, 1}));
  CHECK(normal_euler(square, square.fixed_points[0]) == one(2));

  const auto& ctx = fixtures::catalog_context("RANK2-FLOP");
  for (const auto& s : fixtures::points(ctx, 5))
    for (const auto& fp : ctx.plus.fixed_points)
      for (auto v : twisted_values(fp, normal_euler(ctx.plus, fp), s)) CHECK(v != 0);
}

TEST_CASE("characters and their lifts") {
  const auto con = make_space(datum(1, {{1}, {1}, {-1}, {-1}}, {-1}));
  REQUIRE(con.fixed_points[0].characters.size() == 1);
  CHECK(con.fixed_points[0].characters[0].rho_hat == iv({0}));

  const auto a1 = make_space(datum(1, {{1}, {1}, {-2}}, {-1}));
  const auto& chars = a1.fixed_points[0].characters;
  REQUIRE(chars.size() == 2);
  CHECK(chars[0].rho_hat == iv({0}));
  CHECK(chars[1].rho_hat == iv({1}));
}

TEST_CASE("basis classes are supported at their own point") {
  for (const auto& name : catalog_names()) {
    const auto& ctx = fixtures::catalog_context(name);
    for (const ToricSpace* X : {&ctx.minus, &ctx.plus}) {
      for (const auto& lab : basis_labels(*X)) {
        const auto c = basis_class(*X, Side::Minus, lab.point, lab.character);
        CHECK(c.genuine);
        for (std::size_t p = 0; p < X->fixed_points.size(); ++p) {
          if (p == lab.point) CHECK_FALSE(c.restrictions[p].is_zero());
          else CHECK(c.restrictions[p].is_zero());
        }
      }
    }
  }

  // trivial character: the restriction is the Euler class itself
  const auto con = make_space(datum(1, {{1}, {1}, {-1}, {-1}}, {-1}));
  CHECK(basis_class(con, Side::Minus, 0, 0).restrictions[0] == normal_euler(con, con.fixed_points[0]));

  const auto a1 = make_space(datum(1, {{1}, {1}, {-2}}, {-1}));
  const auto twisted = basis_class(a1, Side::Minus, 0, 1).restrictions[0];
  bool half = false;
  for (const auto& [q, c] : twisted.terms()) {
    half = half || q[2].get_den() == 2;
    CHECK(a1.fixed_points[0].admissible.contains(q));
  }
  CHECK(half);
}

TEST_CASE("decomposition in the localized basis") {
  const auto& ctx = fixtures::catalog_context("WEIGHTED-FLOP");
  const auto s = fixtures::points(ctx, 1).front();
  const auto& X = ctx.minus;
  const auto labels = basis_labels(X);

  for (std::size_t b = 0; b < labels.size(); ++b) {
    const auto coeffs = decompose_in_basis(X, basis_class(X, Side::Minus, labels[b].point, labels[b].character), s);
    for (std::size_t i = 0; i < coeffs.size(); ++i) CHECK(coeffs[i] == (i == b ? 1u : 0u));
  }

  // 3 e_a + e_b
  const auto ea = basis_global(X, labels[0].point, labels[0].character);
  const auto eb = basis_global(X, labels.back().point, labels.back().character);
  const auto coeffs = decompose_in_basis(X, localize(X, Side::Minus, ea * Rational(3) + eb), s);
  CHECK(coeffs.front() == 3);
  CHECK(coeffs.back() == 1);
  for (std::size_t i = 1; i + 1 < coeffs.size(); ++i) CHECK(coeffs[i] == 0);

  // the structure sheaf on the conifold: one over the Euler class at each point
  const auto& cc = fixtures::catalog_context("CONIFOLD");
  const auto cs = fixtures::points(cc, 1).front();
  const auto O = localize(cc.plus, Side::Plus, one(cc.plus.global_dim()));
  const auto oc = decompose_in_basis(cc.plus, O, cs);
  REQUIRE(oc.size() == 2);
  for (std::size_t p = 0; p < 2; ++p)
    CHECK(cs.field.mul(oc[p], specialize(normal_euler(cc.plus, cc.plus.fixed_points[p]), cs)) == 1);

  // exponents outside the admissible lattice are rejected
  const auto& a1 = fixtures::catalog_context("WEIGHTED-A1");
  LocalizedClass bad;
  bad.restrictions = {mono({Rational(1, 2), 0, 0})};
  CHECK_THROWS_AS(decompose_in_basis(a1.minus, bad, fixtures::points(a1, 1).front()), Error);
}

TEST_CASE("localization reconstruction") {
  std::mt19937_64 rng(3);
  for (const auto& name : catalog_names()) {
    const auto& ctx = fixtures::catalog_context(name);
    for (const auto& s : fixtures::points(ctx, 5)) {
      for (const ToricSpace* X : {&ctx.minus, &ctx.plus}) {
        std::uniform_int_distribution<std::size_t> ray(0, X->datum.m() - 1);
        std::uniform_int_distribution<int> power(-2, 2);
        for (int trial = 0; trial < 4; ++trial) {
          KElement g = one(X->global_dim());
          for (int f = 0; f < 3; ++f) g *= X->R(ray(rng)).pow(power(rng));
          if (trial % 2) g += X->S(ray(rng));
          const auto c = localize(*X, Side::Minus, g);
          const auto back = rebuild(*X, decompose_in_basis(*X, c, s), s);
          for (std::size_t p = 0; p < X->fixed_points.size(); ++p)
            CHECK(back[p] == twisted_values(X->fixed_points[p], c.restrictions[p], s));
        }
      }
    }
  }
}

TEST_CASE("basis restriction matrix") {
  for (const auto& name : catalog_names()) {
    const auto& ctx = fixtures::catalog_context(name);
    const auto s = fixtures::points(ctx, 1).front();
    const auto M = basis_restriction_matrix(ctx.minus, s);
    CHECK(M.size() == ctx.minus.basis_size());
    CHECK(fp_inverse(s.field, M).has_value());
  }
}

TEST_CASE("changing a lift multiplies the basis vector and its image by a monomial") {
  for (const auto& name : catalog_names()) {
    const auto& base = fixtures::catalog_context(name);
    for (std::size_t p = 0; p < base.minus.fixed_points.size(); ++p) {
      const Anticone delta = base.minus.fixed_points[p].delta;
      for (std::size_t a = 0; a < delta.size(); ++a) {
        const std::size_t i = delta[a];
        CrossingContext shifted = make_context(base.wc);
        auto& ch = shifted.minus.fixed_points[p].characters[0];
        for (std::size_t t = 0; t < ch.rho_hat.size(); ++t) ch.rho_hat[t] += base.wc.minus.D[i][t];
        // L(D_i) restricts to e^{-lambda_i} wherever i is in delta
        const KElement factor = KElement::monomial(IntVector([&] {
          IntVector v(base.torus_dim(), Integer(0));
          v[i] = -1;
          return v;
        }()));
        const auto e0 = basis_class(base.minus, Side::Minus, p, 0);
        const auto e1 = basis_class(shifted.minus, Side::Minus, p, 0);
        CHECK(e1.restrictions[p] == e0.restrictions[p] * factor);
        for (std::int64_t k : {-1, 0, 2}) {
          const auto b0 = bo_apply(base, k, p, 0);
          const auto b1 = bo_apply(shifted, k, p, 0);
          for (std::size_t q = 0; q < base.plus.fixed_points.size(); ++q)
            CHECK(b1.restrictions[q] == b0.restrictions[q] * factor);
        }
      }
    }
  }
}
