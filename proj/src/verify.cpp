#include "tbo/verify.hpp"

#include <algorithm>
#include <map>

#include "tbo/error.hpp"

namespace tbo {

namespace {

std::string range_text(std::int64_t a, std::int64_t b) {
  return "k in [" + std::to_string(a) + ", " + std::to_string(b) + "]";
}

Verdict verdict(int criterion, std::string identity, bool pass, std::string detail) {
  return {criterion, std::move(identity), pass ? Status::Pass : Status::Fail, std::move(detail)};
}

bool is_one(const KElement& x) { return x == KElement::constant(x.dim(), 1); }

Verdict check_normalization(const CrossingContext& ctx) {
  std::size_t checked = 0;
  std::string bad;
  for (const ToricSpace* X : {&ctx.minus, &ctx.plus, &ctx.tilde})
    for (const auto& fp : X->fixed_points)
      for (auto j : fp.delta) {
        ++checked;
        if (!is_one(restrict_global(fp, X->R(j))) && bad.empty()) bad = "R_" + std::to_string(j + 1) + " at " + to_string(fp.delta);
      }
  return verdict(1, "R_j restricts to 1 at every fixed point containing j", bad.empty(),
                 bad.empty() ? std::to_string(checked) + " restrictions on both sides and the blow-up"
                             : "fails for " + bad);
}

bool block_diagonal_invertible(const ToricSpace& X, const SpecializationPoint& s) {
  const FpMatrix M = basis_restriction_matrix(X, s);
  const auto labels = basis_labels(X);
  std::size_t row = 0;
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    for (std::size_t v = 0; v < X.fixed_points[p].dual_characters.size(); ++v, ++row)
      for (std::size_t b = 0; b < labels.size(); ++b)
        if (labels[b].point != p && M[row][b] != 0) return false;
  }
  return M.size() == labels.size() && fp_inverse(s.field, M).has_value();
}

Verdict check_support(const CrossingContext& ctx, const std::vector<SpecializationPoint>& pts) {
  bool ok = true;
  for (const ToricSpace* X : {&ctx.minus, &ctx.plus})
    for (const auto& lb : basis_labels(*X)) {
      const auto c = basis_class(*X, Side::Minus, lb.point, lb.character);
      for (std::size_t p = 0; p < X->fixed_points.size(); ++p)
        if (p != lb.point && !c.restrictions[p].is_zero()) ok = false;
    }
  for (const auto& s : pts)
    for (const ToricSpace* X : {&ctx.minus, &ctx.plus}) ok = ok && block_diagonal_invertible(*X, s);
  return verdict(2, "basis vectors vanish away from their fixed point; restriction matrix block-diagonal and invertible",
                 ok, std::to_string(pts.size()) + " specializations, both sides");
}

// Products of R_j^{n_j}, a small deterministic family.
std::vector<KElement> monomial_products(const ToricSpace& X, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> exp(-2, 2);
  std::vector<KElement> out;
  for (int t = 0; t < 6; ++t) {
    KElement x = KElement::constant(X.global_dim(), 1);
    for (std::size_t j = 0; j < X.datum.m(); ++j) x *= X.R(j).pow(exp(rng));
    out.push_back(x);
  }
  return out;
}

bool reconstructs(const ToricSpace& X, const KElement& global, const SpecializationPoint& s) {
  const PrimeField& F = s.field;
  const LocalizedClass c = localize(X, Side::Minus, global);
  const auto coeffs = decompose_in_basis(X, c, s);
  const auto labels = basis_labels(X);
  for (std::size_t p = 0; p < X.fixed_points.size(); ++p) {
    const FixedPoint& fp = X.fixed_points[p];
    std::vector<std::uint64_t> rebuilt(fp.dual_characters.size(), 0);
    for (std::size_t b = 0; b < labels.size(); ++b) {
      if (labels[b].point != p) continue;
      const auto e = basis_class(X, Side::Minus, p, labels[b].character);
      const auto vals = twisted_values(fp, e.restrictions[p], s);
      for (std::size_t v = 0; v < vals.size(); ++v) rebuilt[v] = F.add(rebuilt[v], F.mul(coeffs[b], vals[v]));
    }
    if (rebuilt != twisted_values(fp, c.restrictions[p], s)) return false;
  }
  return true;
}

Verdict check_reconstruction(const CrossingContext& ctx, const std::vector<SpecializationPoint>& pts,
                             std::uint64_t seed) {
  bool ok = true;
  std::size_t n = 0;
  for (const ToricSpace* X : {&ctx.minus, &ctx.plus}) {
    const auto family = monomial_products(*X, seed);
    for (const auto& s : pts)
      for (const auto& g : family) {
        ok = ok && reconstructs(*X, g, s);
        ++n;
      }
  }
  return verdict(3, "decomposing a product of R_j^(+-1) in the basis and re-evaluating gives it back", ok,
                 std::to_string(n) + " class/specialization pairs");
}

using ImageTable = std::map<std::int64_t, std::vector<LocalizedClass>>;

Verdict check_identity_case(const CrossingContext& ctx, const ImageTable& images) {
  bool ok = true;
  std::size_t n = 0;
  const auto labels = basis_labels(ctx.minus);
  for (const auto& [k, imgs] : images)
    for (std::size_t b = 0; b < labels.size(); ++b) {
      const FixedPoint& fp = ctx.minus.fixed_points[labels[b].point];
      const auto q = ctx.plus.index_of(fp.delta);
      if (!q) continue;
      const auto& chars = ctx.plus.fixed_points[*q].characters;
      const auto& lift = fp.characters[labels[b].character].rho_hat;
      auto it = std::find_if(chars.begin(), chars.end(), [&](const CharacterWithLift& c) { return c.rho_hat == lift; });
      ++n;
      if (it == chars.end() ||
          imgs[b].restrictions !=
              basis_class(ctx.plus, Side::Plus, *q, static_cast<std::size_t>(it - chars.begin())).restrictions)
        ok = false;
    }
  if (n == 0) return {4, "BO_k fixes e_(delta,rho) when delta is a fixed point on both sides", Status::Pass,
                      "no fixed point is shared by the two sides"};
  return verdict(4, "BO_k fixes e_(delta,rho) when delta is a fixed point on both sides", ok,
                 std::to_string(n) + " basis vectors over all k");
}

Verdict check_genuine(const ImageTable& images, std::int64_t a, std::int64_t b) {
  bool ok = true;
  std::size_t n = 0;
  for (const auto& [k, imgs] : images)
    for (const auto& c : imgs) {
      ok = ok && c.genuine;
      ++n;
    }
  return verdict(5, "every BO_k image has exponents in the admissible lattices", ok,
                 std::to_string(n) + " images, " + range_text(a, b));
}

Verdict check_oracle(const CrossingContext& ctx, const ImageTable& images, const std::vector<SpecializationPoint>& pts) {
  bool ok = true;
  std::size_t n = 0;
  const auto labels = basis_labels(ctx.minus);
  std::vector<LocalizedClass> alphas;
  for (const auto& lb : labels) alphas.push_back(basis_class(ctx.minus, Side::Minus, lb.point, lb.character));
  for (const auto& [k, imgs] : images)
    for (std::size_t b = 0; b < labels.size(); ++b) {
      const auto& alpha = alphas[b];
      for (const auto& s : pts) {
        ok = ok && agrees_with_values(ctx.plus, imgs[b], bo_geometric(ctx, k, alpha, s), s);
        ++n;
      }
    }
  return verdict(6, "closed formula for BO_k equals the pushforward through the blow-up", ok,
                 std::to_string(n) + " basis vector/specialization pairs");
}

Verdict check_duality(const CrossingContext& ctx, std::int64_t a, std::int64_t b,
                      const std::vector<SpecializationPoint>& pts) {
  bool ok = true;
  for (std::int64_t k = a; k <= b; ++k)
    for (const auto& s : pts) ok = ok && verify_duality(ctx, k, s);
  return verdict(7, "BO'_(N-1-k) BO_k = identity", ok, range_text(a, b) + ", " + std::to_string(pts.size()) + " specializations");
}

Verdict check_loci(const CrossingContext& ctx) {
  const WallCrossing& wc = ctx.wc;
  bool ok = true;
  for (Side side : {Side::Plus, Side::Minus}) {
    const ExceptionalDatum x = exceptional_data(wc, side);
    std::vector<Integer> expect;
    Integer sum = 0;
    for (std::size_t i = 0; i < wc.m(); ++i) {
      const Integer d = dot(wc.plus.D[i], wc.e);
      if ((side == Side::Plus && d > 0) || (side == Side::Minus && d < 0)) expect.push_back(abs(d));
    }
    for (const auto& w : x.weights) sum += w;
    ok = ok && x.weights == expect && sum == wc.N &&
         std::all_of(x.weights.begin(), x.weights.end(), [](const Integer& w) { return w >= 1; });
  }
  return verdict(8, "weights of both contracted loci are |D_i . e| and sum to N", ok, "N = " + wc.N.get_str());
}

}  // namespace

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

bool VerificationResult::any(Status s) const {
  return std::any_of(verdicts.begin(), verdicts.end(), [s](const Verdict& v) { return v.status == s; });
}

int VerificationResult::exit_code() const {
  if (any(Status::Fail)) return 1;
  if (any(Status::Skipped)) return 3;
  return 0;
}

std::pair<std::int64_t, std::int64_t> k_range(const ProblemFile& p, const WallCrossing& wc) {
  const std::int64_t N = wc.N.get_si();
  return {p.options.k_min.value_or(-2), p.options.k_max.value_or(N + 2)};
}

std::vector<SpecializationPoint> specializations_for(const CrossingContext& ctx, const ProblemOptions& o) {
  std::vector<SpecializationPoint> out;
  for (unsigned i = 0; i < o.specializations; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(o.seed), static_cast<std::uint32_t>(o.seed >> 32), i};
    std::mt19937_64 rng(seq);
    out.push_back(usable_specialization(ctx, rng, o.prime_bits));
  }
  return out;
}

VerificationResult run_verification(const ProblemFile& p) {
  const WallCrossing wc = analyze_wall(p.plus(), p.minus());
  const CrossingContext ctx = make_context(wc);
  VerificationResult res;
  res.name = p.name;
  std::tie(res.k_min, res.k_max) = k_range(p, wc);
  res.specializations = specializations_for(ctx, p.options);
  const auto& pts = res.specializations;

  ImageTable images;
  const auto labels = basis_labels(ctx.minus);
  for (std::int64_t k = res.k_min; k <= res.k_max; ++k)
    for (const auto& lb : labels) images[k].push_back(bo_apply(ctx, k, lb.point, lb.character));

  auto& v = res.verdicts;
  v.push_back(check_normalization(ctx));
  v.push_back(check_support(ctx, pts));
  v.push_back(check_reconstruction(ctx, pts, p.options.seed));
  v.push_back(check_identity_case(ctx, images));
  v.push_back(check_genuine(images, res.k_min, res.k_max));
  v.push_back(check_oracle(ctx, images, pts));
  v.push_back(check_duality(ctx, res.k_min, res.k_max, pts));
  v.push_back(check_loci(ctx));

  std::map<std::string, bool> composite;  // identity -> pass at every point
  std::vector<std::string> order;
  std::string skipped;
  for (const auto& s : pts) {
    const CompositeReport rep = verify_composites(ctx, s);
    if (rep.skipped) {
      skipped = rep.reason;
      break;
    }
    for (const auto& c : rep.checks) {
      if (!composite.count(c.identity)) order.push_back(c.identity);
      auto [it, fresh] = composite.emplace(c.identity, c.pass);
      if (!fresh) it->second = it->second && c.pass;
    }
  }
  if (!skipped.empty()) {
    v.push_back({9, "twist composites", Status::Skipped, skipped});
  } else {
    for (const auto& id : order)
      v.push_back(verdict(9, id, composite[id], std::to_string(pts.size()) + " specializations"));
  }
  return res;
}

}  // namespace tbo
