#include "tbo/wall.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tbo/error.hpp"

namespace tbo {

namespace {

int sign(const Rational& x) { return sgn(x); }

// omega lies in the closed cone of gens
bool in_closed_cone(const std::vector<IntVector>& gens, const RatVector& omega, std::size_t r) {
  // omega is in the closed cone iff omega + eps * sum(g) is in the strict cone for small eps
  RatVector dir(r, Rational(0));
  for (const auto& g : gens)
    for (std::size_t i = 0; i < r; ++i) dir[i] += g[i];
  return in_strict_cone(gens, omega, dir);
}

}  // namespace

WallCrossing analyze_wall(const GitDatum& plus, const GitDatum& minus) {
  plus.check_shape();
  minus.check_shape();
  if (plus.r != minus.r || plus.D != minus.D)
    throw Error(ErrorKind::InvalidDatum, "the two sides must share rank and characters");
  const std::size_t r = plus.r, m = plus.m();
  if (!validate(plus).ok() || !validate(minus).ok())
    throw Error(ErrorKind::InvalidDatum, "a stability condition violates the standing assumptions");
  if (same_chamber(plus, minus.omega)) throw Error(ErrorKind::SameChamber, "both stability vectors lie in one chamber");

  // candidate walls: hyperplanes spanned by r-1 characters
  std::set<IntVector> normals;
  std::vector<std::size_t> idx(m);
  for (std::size_t i = 0; i < m; ++i) idx[i] = i;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r - 1), true);
  do {
    std::vector<IntVector> span;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) span.push_back(plus.D[i]);
    if (r > 1 && rank(IntMatrix::from_rows(span, r)) != r - 1) continue;
    IntVector n = hyperplane_normal(span, r);
    // canonical sign: first nonzero entry positive
    for (const auto& x : n) {
      if (x == 0) continue;
      if (x < 0)
        for (auto& y : n) y = -y;
      break;
    }
    normals.insert(n);
  } while (std::prev_permutation(pick.begin(), pick.end()));

  std::vector<std::pair<IntVector, RatVector>> crossings;
  for (const auto& n : normals) {
    const RatVector nq = to_rational(n);
    const Rational a = dot(nq, plus.omega), b = dot(nq, minus.omega);
    std::vector<IntVector> on_wall;
    for (const auto& d : plus.D)
      if (dot(n, d) == 0) on_wall.push_back(d);
    if (a == 0 && in_closed_cone(on_wall, plus.omega, r))
      throw Error(ErrorKind::InvalidDatum, "omega_plus lies on a wall");
    if (b == 0 && in_closed_cone(on_wall, minus.omega, r))
      throw Error(ErrorKind::InvalidDatum, "omega_minus lies on a wall");
    if (sign(a) * sign(b) >= 0) continue;
    const Rational t = a / (a - b);
    RatVector p(r);
    for (std::size_t i = 0; i < r; ++i) p[i] = plus.omega[i] + t * (minus.omega[i] - plus.omega[i]);
    if (in_closed_cone(on_wall, p, r)) crossings.emplace_back(n, p);
  }
  if (crossings.size() != 1)
    throw Error(ErrorKind::NotAdjacent, "the segment between the stability vectors crosses " +
                                            std::to_string(crossings.size()) + " walls");

  WallCrossing wc;
  wc.plus = plus;
  wc.minus = minus;
  wc.e = crossings[0].first;
  wc.omega0 = crossings[0].second;
  if (dot(to_rational(wc.e), plus.omega) < 0)
    for (auto& x : wc.e) x = -x;
  wc.N = 0;
  Integer total = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Integer p = dot(plus.D[i], wc.e);
    wc.pairing.push_back(p);
    total += p;
    if (p > 0) {
      wc.M_plus.push_back(i);
      wc.N += p;
    } else if (p < 0) {
      wc.M_minus.push_back(i);
    } else {
      wc.M_zero.push_back(i);
    }
  }
  wc.crepant = (total == 0);
  return wc;
}

bool crepancy_check(const WallCrossing& wc) {
  Integer total = 0;
  for (const auto& p : wc.pairing) total += p;
  return total == 0;
}

WallCrossing reversed(const WallCrossing& wc) {
  WallCrossing rv = wc;
  std::swap(rv.plus, rv.minus);
  for (auto& x : rv.e) x = -x;
  for (auto& p : rv.pairing) p = -p;
  std::swap(rv.M_plus, rv.M_minus);
  rv.N = 0;
  for (auto i : rv.M_plus) rv.N += rv.pairing[i];
  return rv;
}

BlowupDatum build_blowup(const WallCrossing& wc) {
  if (!crepancy_check(wc)) throw Error(ErrorKind::NotCrepant, "the sum of the characters is not on the wall");
  const std::size_t r = wc.r(), m = wc.m();
  GitDatum t;
  t.r = r + 1;
  for (std::size_t j = 0; j < m; ++j) {
    IntVector d = wc.plus.D[j];
    d.push_back(wc.pairing[j] > 0 ? Integer(-wc.pairing[j]) : Integer(0));
    t.D.push_back(d);
  }
  IntVector last(r + 1, Integer(0));
  last[r] = 1;
  t.D.push_back(last);

  BlowupDatum bd;
  bd.exceptional = m;
  bd.tilde = t;
  bd.tilde.omega = wc.omega0;
  bd.tilde.omega.push_back(0);
  bd.tilde.omega_direction.assign(r + 1, Rational(0));
  bd.tilde.omega_direction[r] = -1;
  bd.tilde_plus = t;
  bd.tilde_plus.omega = wc.plus.omega;
  bd.tilde_plus.omega.push_back(1);
  bd.tilde_minus = t;
  bd.tilde_minus.omega = wc.minus.omega;
  bd.tilde_minus.omega.push_back(1);
  return bd;
}

std::vector<TildeFixedPoint> tilde_fixed_points(const WallCrossing& wc, const BlowupDatum& bd) {
  const auto plus_min = minimal_anticones(wc.plus);
  const auto minus_min = minimal_anticones(wc.minus);
  auto is_in = [](const std::vector<Anticone>& v, const Anticone& a) {
    return std::find(v.begin(), v.end(), a) != v.end();
  };
  auto without = [](const Anticone& a, std::size_t x) {
    Anticone b;
    for (auto i : a)
      if (i != x) b.push_back(i);
    return b;
  };
  std::vector<TildeFixedPoint> out;
  for (const auto& dt : minimal_anticones(bd.tilde)) {
    TildeFixedPoint tf;
    tf.delta_tilde = dt;
    const bool has_exc = std::find(dt.begin(), dt.end(), bd.exceptional) != dt.end();
    if (has_exc) {
      tf.kind = TildeKind::Nonflopping;
      tf.image_plus = tf.image_minus = without(dt, bd.exceptional);
    } else {
      tf.kind = TildeKind::Flopping;
      std::vector<std::size_t> jp, jm;
      for (auto i : dt) {
        if (wc.pairing[i] > 0) jp.push_back(i);
        if (wc.pairing[i] < 0) jm.push_back(i);
      }
      if (jp.size() != 1 || jm.size() != 1)
        throw std::logic_error("flopping anticone " + to_string(dt) + " lacks a unique ray on each side");
      tf.image_plus = without(dt, jm[0]);
      tf.image_minus = without(dt, jp[0]);
    }
    if (!is_in(plus_min, tf.image_plus) || !is_in(minus_min, tf.image_minus))
      throw std::logic_error("blow-up fixed point " + to_string(dt) + " has no image fixed point");
    out.push_back(tf);
  }
  return out;
}

}  // namespace tbo
