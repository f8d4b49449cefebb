#include "tbo/fixed_locus.hpp"

#include <algorithm>
#include <stdexcept>

#include "tbo/error.hpp"

namespace tbo {

namespace {

IntMatrix integer_inverse(const IntMatrix& U) {
  auto inv = inverse(RatMatrix(U));
  if (!inv) throw std::logic_error("unimodular matrix is singular");
  IntMatrix out(U.rows(), U.cols());
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j) {
      if ((*inv)(i, j).get_den() != 1) throw std::logic_error("matrix is not unimodular");
      out(i, j) = (*inv)(i, j).get_num();
    }
  return out;
}

IntVector mat_vec(const IntMatrix& A, const IntVector& x) {
  IntVector y(A.rows(), Integer(0));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) y[i] += A(i, j) * x[j];
  return y;
}

// Box vectors 0 <= x_j < h_j of an upper-triangular Hermite basis, lexicographic.
std::vector<IntVector> box_vectors(const HermiteBasis& H, std::size_t r) {
  std::vector<IntVector> out{IntVector(r, Integer(0))};
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<IntVector> next;
    for (const auto& v : out)
      for (Integer x = 0; x < H.H(j, j); ++x) {
        IntVector w = v;
        w[j] = x;
        next.push_back(w);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<IntVector> enumerate_dual_characters(const std::vector<RatVector>& gens, std::size_t dim,
                                                 const Integer& d) {
  if (gens.empty() || dim == 0) return {IntVector(dim, Integer(0))};
  IntMatrix A(gens.size(), dim);
  for (std::size_t k = 0; k < gens.size(); ++k)
    for (std::size_t i = 0; i < dim; ++i) {
      Rational s = gens[k][i] * d;
      if (s.get_den() != 1) throw std::logic_error("lattice generator denominator does not divide the group order");
      A(k, i) = s.get_num();
    }
  const auto snf = smith_normal_form(A);
  const IntMatrix Vinv = integer_inverse(snf.V);
  std::vector<Integer> bounds(dim, Integer(1));
  const auto diag = snf.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), d.get_mpz_t());
    bounds[i] = d / g;
  }
  std::vector<IntVector> us{IntVector(dim, Integer(0))};
  for (std::size_t i = 0; i < dim; ++i) {
    std::vector<IntVector> next;
    for (const auto& u : us)
      for (Integer x = 0; x < bounds[i]; ++x) {
        IntVector w = u;
        w[i] = x;
        next.push_back(w);
      }
    us = std::move(next);
  }
  std::vector<IntVector> out;
  for (const auto& u : us) out.push_back(mat_vec(Vinv, u));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- ToricSpace

KElement ToricSpace::R(std::size_t i) const {
  IntVector exp(global_dim(), Integer(0));
  for (std::size_t k = 0; k < datum.r; ++k) exp[k] = datum.D.at(i)[k];
  if (slot.at(i) >= 0) exp[datum.r + static_cast<std::size_t>(slot[i])] = 1;
  return KElement::monomial(exp);
}

KElement ToricSpace::S(std::size_t i) const { return R(i).pow(-1); }

KElement ToricSpace::line(const IntVector& p) const {
  if (p.size() != datum.r) throw Error(ErrorKind::DimensionMismatch, "line bundle character");
  IntVector exp(global_dim(), Integer(0));
  for (std::size_t k = 0; k < datum.r; ++k) exp[k] = p[k];
  return KElement::monomial(exp);
}

std::optional<std::size_t> ToricSpace::index_of(const Anticone& delta) const {
  for (std::size_t i = 0; i < fixed_points.size(); ++i)
    if (fixed_points[i].delta == delta) return i;
  return std::nullopt;
}

std::size_t ToricSpace::basis_size() const {
  std::size_t n = 0;
  for (const auto& fp : fixed_points) n += fp.characters.size();
  return n;
}

ToricSpace make_space(const GitDatum& d) {
  std::vector<long> slot(d.m());
  for (std::size_t i = 0; i < d.m(); ++i) slot[i] = static_cast<long>(i);
  return make_space(d, slot, d.m());
}

ToricSpace make_space(const GitDatum& d, std::vector<long> slot, std::size_t torus_dim) {
  ToricSpace X;
  X.datum = d;
  X.slot = std::move(slot);
  X.torus_dim = torus_dim;
  if (X.slot.size() != d.m()) throw Error(ErrorKind::DimensionMismatch, "one torus slot per ray");
  for (const auto& delta : minimal_anticones(d)) X.fixed_points.push_back(isotropy(X, delta));
  return X;
}

FixedPoint isotropy(const ToricSpace& X, const Anticone& delta) {
  const GitDatum& d = X.datum;
  const std::size_t r = d.r, m = X.torus_dim;
  if (delta.size() != r) throw Error(ErrorKind::NotMinimal, to_string(delta) + " does not have r elements");
  FixedPoint fp;
  fp.delta = delta;
  fp.M = d.submatrix(delta);
  fp.group_order = abs(determinant(fp.M));
  if (fp.group_order == 0) throw Error(ErrorKind::NotMinimal, to_string(delta) + " is linearly dependent");
  if (!d.is_anticone(delta)) throw Error(ErrorKind::NotMinimal, to_string(delta) + " is not an anticone");
  fp.invariant_factors = smith_normal_form(fp.M).diagonal();

  // c = M^{-T} p; C places c_i into the torus slot of delta_i
  const RatMatrix MinvT = inverse(RatMatrix(fp.M.transpose())).value();
  fp.restriction = RatMatrix(m, r + m);
  for (std::size_t a = 0; a < r; ++a) {
    const long s = X.slot.at(delta[a]);
    if (s < 0) continue;
    for (std::size_t k = 0; k < r; ++k) fp.restriction(static_cast<std::size_t>(s), k) = -MinvT(a, k);
  }
  for (std::size_t i = 0; i < m; ++i) fp.restriction(i, r + i) = 1;

  std::vector<RatVector> gens;
  for (std::size_t k = 0; k < r; ++k) {
    RatVector g(m);
    for (std::size_t i = 0; i < m; ++i) g[i] = fp.restriction(i, k);
    gens.push_back(g);
  }
  fp.admissible = RationalLattice(m, gens);
  if (fp.admissible.index_over_integers() != fp.group_order)
    throw std::logic_error("restriction exponents do not see the whole isotropy group at " + to_string(delta));

  // characters: Z^r modulo the row lattice of M, canonical box representatives
  const HermiteBasis H = hermite_row_basis(fp.M);
  const auto snfT = smith_normal_form(fp.M.transpose());
  const IntMatrix Uinv = integer_inverse(snfT.U);
  const auto diagT = snfT.diagonal();
  for (const auto& x : box_vectors(H, r)) {
    CharacterWithLift c;
    c.rho_hat = x;
    const IntVector y = mat_vec(Uinv, x);
    for (std::size_t i = 0; i < diagT.size(); ++i) {
      if (diagT[i] <= 1) continue;
      Integer res;
      mpz_fdiv_r(res.get_mpz_t(), y[i].get_mpz_t(), diagT[i].get_mpz_t());
      c.residues.push_back(res);
    }
    fp.characters.push_back(c);
  }
  fp.dual_characters = enumerate_dual_characters(gens, m, fp.group_order);
  if (Integer(static_cast<unsigned long>(fp.dual_characters.size())) != fp.group_order ||
      Integer(static_cast<unsigned long>(fp.characters.size())) != fp.group_order)
    throw std::logic_error("character count differs from the isotropy order at " + to_string(delta));

  fp.euler = KElement::constant(m, 1);
  for (std::size_t j = 0; j < d.m(); ++j)
    if (std::find(delta.begin(), delta.end(), j) == delta.end())
      fp.euler *= KElement::constant(m, 1) - restrict_global(fp, X.S(j));
  return fp;
}

KElement restrict_line(const FixedPoint& fp, const IntVector& p, const IntVector& mu) {
  IntVector exp = p;
  exp.insert(exp.end(), mu.begin(), mu.end());
  if (exp.size() != fp.restriction.cols()) throw Error(ErrorKind::DimensionMismatch, "restrict_line");
  return KElement::monomial(fp.restriction.apply(to_rational(exp)));
}

KElement restrict_global(const FixedPoint& fp, const KElement& global) {
  return global.map_exponents(fp.restriction);
}

const KElement& normal_euler(const ToricSpace&, const FixedPoint& fp) { return fp.euler; }

const char* to_string(Side s) {
  switch (s) {
    case Side::Plus: return "plus";
    case Side::Minus: return "minus";
    case Side::Tilde: return "tilde";
  }
  return "?";
}

std::vector<BasisLabel> basis_labels(const ToricSpace& X) {
  std::vector<BasisLabel> out;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p)
    for (std::size_t c = 0; c < X.fixed_points[p].characters.size(); ++c) out.push_back({p, c});
  return out;
}

LocalizedClass localize(const ToricSpace& X, Side side, const KElement& global) {
  if (global.dim() != X.global_dim() && !(global.is_zero() && global.dim() == 0))
    throw Error(ErrorKind::DimensionMismatch, "global class lives in the wrong exponent space");
  LocalizedClass c;
  c.side = side;
  c.global = global;
  for (const auto& fp : X.fixed_points) c.restrictions.push_back(restrict_global(fp, global));
  c.genuine = is_genuine(X, c);
  return c;
}

bool is_genuine(const ToricSpace& X, const LocalizedClass& c) {
  if (c.restrictions.size() != X.fixed_points.size()) return false;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p)
    for (const auto& [q, coeff] : c.restrictions[p].terms())
      if (!X.fixed_points[p].admissible.contains(q)) return false;
  return true;
}

KElement basis_global(const ToricSpace& X, std::size_t point, std::size_t character) {
  const FixedPoint& fp = X.fixed_points.at(point);
  KElement g = X.line(fp.characters.at(character).rho_hat);
  const KElement one = KElement::constant(X.global_dim(), 1);
  for (std::size_t i = 0; i < X.datum.m(); ++i)
    if (std::find(fp.delta.begin(), fp.delta.end(), i) == fp.delta.end()) g *= one - X.S(i);
  return g;
}

LocalizedClass basis_class(const ToricSpace& X, Side side, std::size_t point, std::size_t character) {
  return localize(X, side, basis_global(X, point, character));
}

std::vector<std::uint64_t> twisted_values(const FixedPoint& fp, const KElement& x, const SpecializationPoint& s) {
  std::vector<std::uint64_t> out;
  for (const auto& v : fp.dual_characters) out.push_back(specialize(x, s.twisted(v)));
  return out;
}

namespace {

// zeta^{L <v, q>}
std::uint64_t character_value(const IntVector& v, const RatVector& q, const SpecializationPoint& s) {
  Rational t = 0;
  for (std::size_t i = 0; i < v.size(); ++i) t += Rational(v[i]) * q[i];
  t *= Rational(Integer(static_cast<unsigned long>(s.L)));
  if (t.get_den() != 1) throw Error(ErrorKind::DenominatorNotDividingL, "character pairing is not integral");
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), t.get_num_mpz_t(), s.L);
  return s.field.pow(s.zeta, r.get_ui());
}

}  // namespace

std::vector<std::uint64_t> decompose_values(const ToricSpace& X,
                                            const std::vector<std::vector<std::uint64_t>>& values,
                                            const SpecializationPoint& s) {
  const PrimeField& F = s.field;
  std::vector<std::uint64_t> out;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    const FixedPoint& fp = X.fixed_points[p];
    const auto eu = twisted_values(fp, normal_euler(X, fp), s);
    std::vector<std::uint64_t> ratio;
    for (std::size_t v = 0; v < eu.size(); ++v) {
      if (eu[v] == 0)
        throw Error(ErrorKind::DivisionByZeroAtSpecialization, "Euler class vanishes at " + to_string(fp.delta));
      ratio.push_back(F.div(values.at(p).at(v), eu[v]));
    }
    const std::uint64_t inv_order = F.inv(F.from_integer(fp.group_order));
    for (const auto& ch : fp.characters) {
      const KElement lift = restrict_line(fp, ch.rho_hat, IntVector(X.torus_dim, Integer(0)));
      const RatVector q = lift.terms().front().first;
      RatVector minus_q = q;
      for (auto& x : minus_q) x = -x;
      std::uint64_t acc = 0;
      for (std::size_t v = 0; v < ratio.size(); ++v)
        acc = F.add(acc, F.mul(character_value(fp.dual_characters[v], minus_q, s), ratio[v]));
      const std::uint64_t base = specialize(lift, s);
      out.push_back(F.div(F.mul(acc, inv_order), base));
    }
  }
  return out;
}

std::vector<std::uint64_t> decompose_in_basis(const ToricSpace& X, const LocalizedClass& c,
                                              const SpecializationPoint& s) {
  if (c.restrictions.size() != X.fixed_points.size())
    throw Error(ErrorKind::DimensionMismatch, "class has the wrong number of fixed points");
  std::vector<std::vector<std::uint64_t>> values;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    for (const auto& [q, coeff] : c.restrictions[p].terms())
      if (!X.fixed_points[p].admissible.contains(q))
        throw Error(ErrorKind::NotAdmissible, "exponent " + to_string(q) + " outside the admissible lattice at " +
                                                  to_string(X.fixed_points[p].delta));
    values.push_back(twisted_values(X.fixed_points[p], c.restrictions[p], s));
  }
  return decompose_values(X, values, s);
}

FpMatrix basis_restriction_matrix(const ToricSpace& X, const SpecializationPoint& s) {
  const auto labels = basis_labels(X);
  FpMatrix M;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    const FixedPoint& fp = X.fixed_points[p];
    for (std::size_t v = 0; v < fp.dual_characters.size(); ++v) M.emplace_back(labels.size(), 0);
  }
  for (std::size_t b = 0; b < labels.size(); ++b) {
    const LocalizedClass c = basis_class(X, Side::Minus, labels[b].point, labels[b].character);
    std::size_t row = 0;
    for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
      const auto vals = twisted_values(X.fixed_points[p], c.restrictions[p], s);
      for (auto v : vals) M[row++][b] = v;
    }
  }
  return M;
}

std::uint64_t root_order(const ToricSpace& X) {
  Integer L = 1;
  for (const auto& fp : X.fixed_points) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), fp.group_order.get_mpz_t());
  return L.get_ui();
}

}  // namespace tbo
