#include "tbo/git.hpp"

#include <algorithm>
#include <sstream>

#include "tbo/error.hpp"

namespace tbo {

std::string to_string(const Anticone& a) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i] + 1;
  os << '}';
  return os.str();
}

void GitDatum::check_shape() const {
  if (r == 0) throw Error(ErrorKind::InvalidDatum, "torus rank must be positive");
  if (m() < r) throw Error(ErrorKind::InvalidDatum, "need at least r characters");
  for (std::size_t i = 0; i < m(); ++i)
    if (D[i].size() != r)
      throw Error(ErrorKind::InvalidDatum, "character " + std::to_string(i + 1) + " has wrong length");
  if (omega.size() != r) throw Error(ErrorKind::InvalidDatum, "stability vector has wrong length");
  if (!omega_direction.empty() && omega_direction.size() != r)
    throw Error(ErrorKind::InvalidDatum, "perturbation direction has wrong length");
}

bool GitDatum::is_anticone(const Anticone& I) const {
  std::vector<IntVector> gens;
  for (auto i : I) gens.push_back(D.at(i));
  if (omega_direction.empty()) return in_strict_cone(gens, omega);
  return in_strict_cone(gens, omega, omega_direction);
}

IntMatrix GitDatum::submatrix(const Anticone& I) const {
  std::vector<IntVector> rows;
  for (auto i : I) rows.push_back(D.at(i));
  return IntMatrix::from_rows(rows, r);
}

namespace {

std::vector<Anticone> all_subsets(std::size_t m) {
  std::vector<Anticone> out;
  for (std::size_t k = 0; k <= m; ++k) {
    std::vector<bool> pick(m, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      Anticone a;
      for (std::size_t i = 0; i < m; ++i)
        if (pick[i]) a.push_back(i);
      out.push_back(a);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::vector<Anticone> enumerate(const GitDatum& d) {
  std::vector<Anticone> out;
  for (auto& I : all_subsets(d.m()))
    if (d.is_anticone(I)) out.push_back(I);
  return out;
}

void require_valid(const GitDatum& d) {
  const auto rep = validate(d);
  if (!rep.all_rays_anticone.pass) throw Error(ErrorKind::InvalidDatum, "stability not in the cone of all characters");
  if (!rep.anticones_span.pass)
    throw Error(ErrorKind::InvalidDatum, "anticone " + to_string(*rep.anticones_span.witness) + " does not span");
}

}  // namespace

ValidationReport validate(const GitDatum& d) {
  d.check_shape();
  if (d.m() > 20) throw Error(ErrorKind::InvalidDatum, "too many characters for exhaustive enumeration");
  ValidationReport rep;
  Anticone all(d.m());
  for (std::size_t i = 0; i < d.m(); ++i) all[i] = i;
  if (!d.is_anticone(all)) {
    rep.all_rays_anticone.pass = false;
    rep.all_rays_anticone.witness = all;
  }
  for (const auto& I : enumerate(d)) {
    if (I.empty() || rank(d.submatrix(I)) < d.r) {
      rep.anticones_span.pass = false;
      rep.anticones_span.witness = I;
      break;
    }
  }
  return rep;
}

std::vector<Anticone> minimal_anticones(const GitDatum& d) {
  require_valid(d);
  std::vector<Anticone> out;
  for (const auto& I : all_subsets(d.m())) {
    if (I.size() != d.r) continue;
    if (determinant(d.submatrix(I)) == 0) continue;
    if (d.is_anticone(I)) out.push_back(I);
  }
  return out;
}

std::vector<Anticone> anticones(const GitDatum& d) {
  require_valid(d);
  return enumerate(d);
}

bool same_chamber(const GitDatum& d, const RatVector& omega2) {
  GitDatum other = d;
  other.omega = omega2;
  return minimal_anticones(d) == minimal_anticones(other);
}

std::vector<std::size_t> extended_set(const GitDatum& d) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < d.m(); ++i) {
    Anticone rest;
    for (std::size_t j = 0; j < d.m(); ++j)
      if (j != i) rest.push_back(j);
    if (!d.is_anticone(rest)) out.push_back(i);
  }
  return out;
}

}  // namespace tbo
