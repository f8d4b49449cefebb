#include "tbo/bondal_orlov.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "tbo/error.hpp"

namespace tbo {

struct CrossingCache {
  std::mutex lock;
  std::unique_ptr<CrossingContext> reversed;
  std::map<std::tuple<std::int64_t, std::size_t, std::size_t>, LocalizedClass> images;
  // (k, modulus, zeta, coordinates) -> matrix in this context's own direction
  std::map<std::tuple<std::int64_t, std::uint64_t, std::uint64_t, std::vector<std::uint64_t>>, FpMatrix> matrices;
};

namespace {

bool contains(const Anticone& a, std::size_t i) { return std::find(a.begin(), a.end(), i) != a.end(); }

std::int64_t to_i64(const Integer& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits");
  return x.get_si();
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), Integer(static_cast<unsigned long>(a)).get_mpz_t(),
          Integer(static_cast<unsigned long>(b)).get_mpz_t());
  return r.get_ui();
}

}  // namespace

CrossingContext make_context(const WallCrossing& wc) {
  CrossingContext ctx;
  ctx.wc = wc;
  ctx.blowup = build_blowup(wc);
  ctx.minus = make_space(wc.minus);
  ctx.plus = make_space(wc.plus);
  std::vector<long> slot(wc.m() + 1);
  for (std::size_t i = 0; i < wc.m(); ++i) slot[i] = static_cast<long>(i);
  slot[wc.m()] = -1;
  ctx.tilde = make_space(ctx.blowup.tilde, slot, wc.m());
  ctx.tilde_points = tilde_fixed_points(wc, ctx.blowup);
  ctx.root_order = lcm_u64(lcm_u64(root_order(ctx.minus), root_order(ctx.plus)), root_order(ctx.tilde));
  ctx.cache = std::make_shared<CrossingCache>();
  return ctx;
}

const CrossingContext& reversed_context(const CrossingContext& ctx) {
  if (!ctx.cache) throw std::logic_error("context was not built by make_context");
  std::lock_guard<std::mutex> g(ctx.cache->lock);
  if (!ctx.cache->reversed) ctx.cache->reversed = std::make_unique<CrossingContext>(make_context(reversed(ctx.wc)));
  return *ctx.cache->reversed;
}

KElement bo_global(const CrossingContext& ctx, std::int64_t k, std::size_t minus_point, std::size_t character) {
  const WallCrossing& wc = ctx.wc;
  if (!wc.crepant) throw Error(ErrorKind::NotCrepant, "transform needs a crepant crossing");
  const FixedPoint& fp = ctx.minus.fixed_points.at(minus_point);
  const CharacterWithLift& ch = fp.characters.at(character);
  const ToricSpace& X = ctx.plus;
  const std::size_t dim = X.global_dim();
  const KElement one = KElement::constant(dim, 1);

  if (X.index_of(fp.delta)) return basis_global(ctx.minus, minus_point, character);

  std::vector<std::size_t> negative;
  for (auto i : fp.delta)
    if (wc.pairing[i] < 0) negative.push_back(i);
  if (negative.size() != 1)
    throw std::logic_error("fixed point " + to_string(fp.delta) + " has no unique ray with negative pairing");
  const std::size_t j_minus = negative[0];
  const std::int64_t l = to_i64(-wc.pairing[j_minus]);
  const std::int64_t rho_e = to_i64(dot(ch.rho_hat, wc.e));

  TPoly P = geometric_quotient(l, dim).shift(k + rho_e) * X.line(ch.rho_hat);
  for (std::size_t i = 0; i < wc.m(); ++i) {
    if (contains(fp.delta, i)) continue;
    if (wc.pairing[i] < 0) {
      P = P * (one - X.S(i));
    } else {
      P = P * (TPoly::from(one) - TPoly::from(X.S(i), -to_i64(wc.pairing[i])));
    }
  }
  return root_of_unity_filter(P, l, X.R(j_minus));
}

LocalizedClass bo_apply(const CrossingContext& ctx, std::int64_t k, std::size_t minus_point, std::size_t character) {
  const auto key = std::make_tuple(k, minus_point, character);
  if (ctx.cache) {
    std::lock_guard<std::mutex> g(ctx.cache->lock);
    auto it = ctx.cache->images.find(key);
    if (it != ctx.cache->images.end()) return it->second;
  }
  LocalizedClass c = localize(ctx.plus, Side::Plus, bo_global(ctx, k, minus_point, character));
  if (ctx.cache) {
    std::lock_guard<std::mutex> g(ctx.cache->lock);
    ctx.cache->images.emplace(key, c);
  }
  return c;
}

LocalizedClass bo_apply(const CrossingContext& ctx, std::int64_t k, const Anticone& delta_minus,
                        const CharacterWithLift& c) {
  const auto p = ctx.minus.index_of(delta_minus);
  if (!p) throw Error(ErrorKind::NotMinimal, to_string(delta_minus) + " is not a minus-side fixed point");
  const auto& chars = ctx.minus.fixed_points[*p].characters;
  for (std::size_t i = 0; i < chars.size(); ++i)
    if (chars[i].rho_hat == c.rho_hat) return bo_apply(ctx, k, *p, i);
  throw Error(ErrorKind::CharacterMismatch, "lift " + to_string(c.rho_hat) + " is not a canonical character lift at " +
                                                to_string(delta_minus));
}

std::vector<std::vector<std::uint64_t>> bo_geometric(const CrossingContext& ctx, std::int64_t k,
                                                     const LocalizedClass& alpha, const SpecializationPoint& s) {
  if (!alpha.global) throw Error(ErrorKind::MissingGlobalExpression, "the blow-up route needs a global expression");
  const std::size_t r = ctx.wc.r(), m = ctx.torus_dim();
  const PrimeField& F = s.field;

  // pullback from the minus side: (p, mu) -> ((p, 0), mu)
  RatMatrix pull(r + 1 + m, r + m);
  for (std::size_t i = 0; i < r; ++i) pull(i, i) = 1;
  for (std::size_t i = 0; i < m; ++i) pull(r + 1 + i, r + i) = 1;
  const KElement psi = ctx.tilde.R(ctx.blowup.exceptional).pow(k) * alpha.global->map_exponents(pull);

  // per blow-up fixed point: psi / euler at every twisted point
  std::vector<std::vector<std::uint64_t>> local;
  for (const auto& fp : ctx.tilde.fixed_points) {
    const auto num = twisted_values(fp, restrict_global(fp, psi), s);
    const auto den = twisted_values(fp, normal_euler(ctx.tilde, fp), s);
    std::vector<std::uint64_t> q;
    for (std::size_t v = 0; v < num.size(); ++v) {
      if (den[v] == 0) throw Error(ErrorKind::DivisionByZeroAtSpecialization, "blow-up Euler class vanishes");
      q.push_back(F.div(num[v], den[v]));
    }
    local.push_back(std::move(q));
  }

  std::vector<std::vector<std::uint64_t>> out;
  for (const auto& fpp : ctx.plus.fixed_points) {
    const auto eu = twisted_values(fpp, normal_euler(ctx.plus, fpp), s);
    std::vector<std::uint64_t> sums(fpp.dual_characters.size(), 0);
    for (std::size_t t = 0; t < ctx.tilde.fixed_points.size(); ++t) {
      if (ctx.tilde_points[t].image_plus != fpp.delta) continue;
      const FixedPoint& fpt = ctx.tilde.fixed_points[t];
      if (!fpt.admissible.contains_lattice(fpp.admissible))
        throw std::logic_error("pullback does not embed the character lattice");
      // a twisted point of the blow-up lies over v when the two agree on the plus-side lattice
      auto over = [&](const IntVector& vt, const IntVector& v) {
        for (const auto& g : fpp.admissible.generators()) {
          Rational x = 0;
          for (std::size_t i = 0; i < m; ++i) x += Rational(vt[i] - v[i]) * g[i];
          if (x.get_den() != 1) return false;
        }
        return true;
      };
      const IntVector zero(m, Integer(0));
      std::uint64_t kernel = 0;
      for (const auto& vt : fpt.dual_characters) kernel += over(vt, zero);
      const std::uint64_t inv_kernel = F.inv(kernel % F.modulus());
      for (std::size_t v = 0; v < fpp.dual_characters.size(); ++v) {
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < fpt.dual_characters.size(); ++w)
          if (over(fpt.dual_characters[w], fpp.dual_characters[v])) acc = F.add(acc, local[t][w]);
        sums[v] = F.add(sums[v], F.mul(acc, inv_kernel));
      }
    }
    for (std::size_t v = 0; v < sums.size(); ++v) sums[v] = F.mul(sums[v], eu[v]);
    out.push_back(std::move(sums));
  }
  return out;
}

bool agrees_with_values(const ToricSpace& X, const LocalizedClass& c,
                        const std::vector<std::vector<std::uint64_t>>& values, const SpecializationPoint& s) {
  if (c.restrictions.size() != X.fixed_points.size() || values.size() != X.fixed_points.size()) return false;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p)
    if (twisted_values(X.fixed_points[p], c.restrictions[p], s) != values[p]) return false;
  return true;
}

LocalizedClass bo_prime_apply(const CrossingContext& ctx, std::int64_t k, std::size_t plus_point,
                              std::size_t character) {
  LocalizedClass c = bo_apply(reversed_context(ctx), k, plus_point, character);
  c.side = Side::Minus;
  return c;
}

namespace {

FpMatrix compute_columns(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s) {
  const auto labels = basis_labels(ctx.minus);
  const std::size_t n = ctx.plus.basis_size();
  FpMatrix M(n, std::vector<std::uint64_t>(labels.size(), 0));
  for (std::size_t b = 0; b < labels.size(); ++b) {
    const LocalizedClass img = bo_apply(ctx, k, labels[b].point, labels[b].character);
    const auto col = decompose_in_basis(ctx.plus, img, s);
    for (std::size_t i = 0; i < n; ++i) M[i][b] = col[i];
  }
  return M;
}

FpMatrix transform_columns(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s) {
  if (!ctx.cache) return compute_columns(ctx, k, s);
  const auto key = std::make_tuple(k, s.field.modulus(), s.zeta, s.y);
  {
    std::lock_guard<std::mutex> g(ctx.cache->lock);
    auto it = ctx.cache->matrices.find(key);
    if (it != ctx.cache->matrices.end()) return it->second;
  }
  FpMatrix M = compute_columns(ctx, k, s);
  std::lock_guard<std::mutex> g(ctx.cache->lock);
  ctx.cache->matrices.emplace(key, M);
  return M;
}

}  // namespace

TransformMatrix bo_matrix(const CrossingContext& ctx, std::int64_t k, Direction direction,
                          const SpecializationPoint& s) {
  const CrossingContext* c = direction == Direction::PlusToMinus ? &reversed_context(ctx) : &ctx;
  if (c->minus.basis_size() != c->plus.basis_size())
    throw std::logic_error("basis sizes differ across the crossing");
  TransformMatrix T;
  T.k = k;
  T.direction = direction;
  std::mt19937_64 rng(s.field.modulus() ^ (s.y.empty() ? 0 : s.y[0]));
  SpecializationPoint point = s;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (attempt > 0) point = resample(s, rng);
    try {
      FpMatrix M = transform_columns(*c, k, point);
      if (!fp_inverse(point.field, M)) continue;
      T.specialization = point;
      T.entries = std::move(M);
      return T;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DivisionByZeroAtSpecialization) throw;
    }
  }
  throw Error(ErrorKind::SingularAfterResampling,
              "transform matrix for k = " + std::to_string(k) + " stays singular after resampling");
}

bool verify_duality(const CrossingContext& ctx, std::int64_t k, const SpecializationPoint& s) {
  const std::int64_t N = to_i64(ctx.wc.N);
  const TransformMatrix forward = bo_matrix(ctx, k, Direction::MinusToPlus, s);
  const TransformMatrix back = bo_matrix(ctx, (N - 1) - k, Direction::PlusToMinus, forward.specialization);
  if (back.specialization.y != forward.specialization.y) return false;
  const FpMatrix P = fp_multiply(s.field, back.entries, forward.entries);
  return P == fp_identity(P.size());
}

SpecializationPoint usable_specialization(const CrossingContext& ctx, std::mt19937_64& rng, unsigned prime_bits) {
  SpecializationPoint s = random_specialization(ctx.root_order, ctx.torus_dim(), rng, prime_bits);
  for (int attempt = 0; attempt < 50; ++attempt) {
    bool ok = true;
    for (const ToricSpace* X : {&ctx.minus, &ctx.plus, &ctx.tilde}) {
      for (const auto& fp : X->fixed_points) {
        const auto vals = twisted_values(fp, normal_euler(*X, fp), s);
        if (std::find(vals.begin(), vals.end(), 0) != vals.end()) ok = false;
      }
    }
    if (ok) return s;
    s = resample(s, rng);
  }
  throw Error(ErrorKind::DivisionByZeroAtSpecialization, "no usable specialization found");
}

}  // namespace tbo
