#include "tbo/contraction_twist.hpp"

#include <algorithm>
#include <random>

#include "tbo/error.hpp"

namespace tbo {

namespace {

std::int64_t to_i64(const Integer& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return x.get_si();
}

FpMatrix twist_inverse(const PrimeField& F, const FpMatrix& T) {
  auto inv = fp_inverse(F, T);
  if (!inv) throw Error(ErrorKind::SingularAfterResampling, "twist matrix is singular");
  return *inv;
}

}  // namespace

std::string ExceptionalDatum::unsupported_reason() const {
  if (!quotient_rank_ok) return "rays on the wall do not span it";
  if (saturation_index != 1)
    return "rays on the wall generate a sublattice of index " + saturation_index.get_str() +
           " in the wall lattice; twist identities need it to be the whole wall lattice";
  if (base_dim != 0) return "contracted locus fibres over a base of dimension " + std::to_string(base_dim);
  return "";
}

ExceptionalDatum exceptional_data(const WallCrossing& wc, Side side) {
  if (side == Side::Tilde) throw Error(ErrorKind::InvalidDatum, "contraction loci live on the plus or minus side");
  ExceptionalDatum x;
  x.side = side;
  x.rays = side == Side::Plus ? wc.M_plus : wc.M_minus;
  for (auto i : x.rays) x.weights.push_back(abs(wc.pairing[i]));

  std::vector<IntVector> wall_rays;
  for (auto i : wc.M_zero) wall_rays.push_back(wc.plus.D[i]);
  const std::size_t r = wc.r();
  const std::size_t rk = wall_rays.empty() ? 0 : rank(IntMatrix::from_rows(wall_rays, r));
  x.quotient_rank_ok = rk + 1 == r;
  x.saturation_index = wall_rays.empty() ? Integer(1) : saturation_index(wall_rays, wall_rays, r);
  x.base_dim = wc.M_zero.size() >= rk ? wc.M_zero.size() - rk : 0;
  return x;
}

IntVector degree_one_lift(const WallCrossing& wc) {
  // e = U S V with S = (1, 0, ..., 0) since e is primitive; p = V^{-1} (-U^{-1}, 0, ...)
  const auto snf = smith_normal_form(IntMatrix::from_rows({wc.e}, wc.r()));
  const auto Vinv = inverse(RatMatrix(snf.V));
  RatVector y(wc.r(), Rational(0));
  y[0] = Rational(-1) / Rational(snf.U(0, 0) * snf.S(0, 0));
  const RatVector p = Vinv->apply(y);
  IntVector out;
  for (const auto& q : p) {
    if (q.get_den() != 1) throw std::logic_error("degree-one lift is not integral");
    out.push_back(q.get_num());
  }
  if (dot(out, wc.e) != -1) throw std::logic_error("degree-one lift has the wrong degree");
  return out;
}

LocalizedClass substack_class(const CrossingContext& ctx, std::int64_t k) {
  const ExceptionalDatum x = exceptional_data(ctx.wc, Side::Minus);
  if (!x.supported()) throw Error(ErrorKind::SaturationFailure, x.unsupported_reason());
  const ToricSpace& X = ctx.minus;
  IntVector p = degree_one_lift(ctx.wc);
  for (auto& v : p) v *= k;
  KElement W = X.line(p);
  const KElement one = KElement::constant(X.global_dim(), 1);
  for (auto i : ctx.wc.M_plus) W *= one - X.S(i);
  return localize(X, Side::Minus, W);
}

std::uint64_t euler_pairing(const ToricSpace& X, const LocalizedClass& A, const LocalizedClass& B,
                            const SpecializationPoint& s) {
  if (A.side != B.side) throw Error(ErrorKind::DimensionMismatch, "pairing classes from different sides");
  if (A.restrictions.size() != X.fixed_points.size() || B.restrictions.size() != X.fixed_points.size())
    throw Error(ErrorKind::DimensionMismatch, "class has the wrong number of fixed points");
  const PrimeField& F = s.field;
  std::uint64_t total = 0;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    const FixedPoint& fp = X.fixed_points[p];
    const KElement integrand = A.restrictions[p].dual() * B.restrictions[p];
    if (integrand.is_zero()) continue;
    const auto num = twisted_values(fp, integrand, s);
    const auto den = twisted_values(fp, normal_euler(X, fp), s);
    std::uint64_t acc = 0;
    for (std::size_t v = 0; v < num.size(); ++v) {
      if (den[v] == 0) throw Error(ErrorKind::EulerClassVanishes, "Euler class vanishes at " + to_string(fp.delta));
      acc = F.add(acc, F.div(num[v], den[v]));
    }
    total = F.add(total, F.div(acc, F.from_integer(fp.group_order)));
  }
  return total;
}

TwistOperator twist_matrix(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s) {
  const ToricSpace& X = ctx.minus;
  const PrimeField& F = s.field;
  TwistOperator T;
  T.k = k;
  T.side = Side::Minus;
  T.W = substack_class(ctx, k);
  const auto w = decompose_in_basis(X, T.W, s);
  const auto labels = basis_labels(X);
  const std::size_t n = labels.size();
  FpMatrix M = fp_identity(n);
  for (std::size_t b = 0; b < n; ++b) {
    const auto e = basis_class(X, Side::Minus, labels[b].point, labels[b].character);
    const std::uint64_t c = euler_pairing(X, T.W, e, s);
    for (std::size_t i = 0; i < n; ++i) M[i][b] = F.sub(M[i][b], F.mul(c, w[i]));
  }
  T.matrix.k = k;
  T.matrix.direction = Direction::MinusToPlus;
  T.matrix.specialization = s;
  T.matrix.entries = std::move(M);
  return T;
}

bool CompositeReport::all_pass() const {
  return !skipped && std::all_of(checks.begin(), checks.end(), [](const CompositeCheck& c) { return c.pass; });
}

namespace {

FpMatrix transform_at(const CrossingContext& ctx, std::int64_t k, Direction d, const SpecializationPoint& s) {
  TransformMatrix M = bo_matrix(ctx, k, d, s);
  if (M.specialization.y != s.y)
    throw Error(ErrorKind::SingularAfterResampling, "transform for k = " + std::to_string(k) + " singular at s");
  return std::move(M.entries);
}

void composites_one_side(const CrossingContext& ctx, const SpecializationPoint& s, const std::string& locus,
                         std::vector<CompositeCheck>& out) {
  const PrimeField& F = s.field;
  const std::int64_t N = to_i64(ctx.wc.N);
  std::vector<FpMatrix> inv_twist;  // index k + (N - 1)
  for (std::int64_t k = -(N - 1); k <= N - 1; ++k)
    inv_twist.push_back(twist_inverse(F, twist_matrix(ctx, k, s).matrix.entries));

  for (std::int64_t k = -(N - 1); k <= N - 1; ++k) {
    const FpMatrix lhs = fp_multiply(F, transform_at(ctx, -k - 1, Direction::PlusToMinus, s),
                                     transform_at(ctx, (N - 1) + k, Direction::MinusToPlus, s));
    out.push_back({"BO'_" + std::to_string(-k - 1) + " BO_" + std::to_string(N - 1 + k) + " = T^-1 of O_" + locus +
                       "(" + std::to_string(k) + ")",
                   lhs == inv_twist[k + (N - 1)]});
  }

  const FpMatrix fm = fp_multiply(F, transform_at(ctx, 0, Direction::PlusToMinus, s),
                                  transform_at(ctx, 0, Direction::MinusToPlus, s));
  FpMatrix prod = fp_identity(fm.size());
  for (std::int64_t i = 1; i <= N - 1; ++i) prod = fp_multiply(F, prod, inv_twist[-i + (N - 1)]);
  std::string name = "FM' FM = ";
  if (N == 1) name += "identity";
  for (std::int64_t i = 1; i <= N - 1; ++i)
    name += (i > 1 ? " " : "") + std::string("T^-1 of O_") + locus + "(" + std::to_string(-i) + ")";
  out.push_back({name, fm == prod});
}

}  // namespace

CompositeReport verify_composites(const CrossingContext& ctx, const SpecializationPoint& s) {
  CompositeReport rep;
  rep.minus_locus = exceptional_data(ctx.wc, Side::Minus);
  rep.plus_locus = exceptional_data(ctx.wc, Side::Plus);
  if (!rep.minus_locus.supported()) {
    rep.skipped = true;
    rep.reason = rep.minus_locus.unsupported_reason();
    return rep;
  }
  composites_one_side(ctx, s, "P(b)", rep.checks);
  const CrossingContext& rev = reversed_context(ctx);
  std::vector<CompositeCheck> mirrored;
  composites_one_side(rev, s, "P(a)", mirrored);
  for (auto& c : mirrored) {
    c.identity = "[reversed] " + c.identity;
    rep.checks.push_back(std::move(c));
  }
  return rep;
}

}  // namespace tbo
