#include "tbo/kring.hpp"

#include <algorithm>
#include <sstream>

#include "tbo/error.hpp"

namespace tbo {

namespace {

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::size_t common_dim(const KElement& a, const KElement& b) {
  // an empty element built without a dimension adapts to the other operand
  if (a.dim() == b.dim()) return a.dim();
  if (a.is_zero() && a.dim() == 0) return b.dim();
  if (b.is_zero() && b.dim() == 0) return a.dim();
  throw Error(ErrorKind::DimensionMismatch,
              "exponent spaces of dimension " + std::to_string(a.dim()) + " and " + std::to_string(b.dim()));
}

std::map<IntVector, Rational> rescaled(const KElement& x, const Integer& den) {
  if (x.denominator() == den) return x.numerators();
  const Integer f = den / x.denominator();
  std::map<IntVector, Rational> out;
  for (const auto& [e, c] : x.numerators()) {
    IntVector s = e;
    for (auto& v : s) v *= f;
    out.emplace(std::move(s), c);
  }
  return out;
}

}  // namespace

KElement KElement::constant(std::size_t dim, const Rational& c) {
  KElement x(dim);
  if (c != 0) x.terms_.emplace(IntVector(dim, Integer(0)), c);
  return x;
}

KElement KElement::monomial(const RatVector& exponent, const Rational& coeff) {
  KElement x(exponent.size());
  if (coeff == 0) return x;
  for (const auto& q : exponent) x.den_ = lcm(x.den_, q.get_den());
  IntVector num;
  for (const auto& q : exponent) num.push_back(q.get_num() * (x.den_ / q.get_den()));
  x.terms_.emplace(std::move(num), coeff);
  x.normalize();
  return x;
}

KElement KElement::monomial(const IntVector& exponent, const Rational& coeff) {
  KElement x(exponent.size());
  if (coeff != 0) x.terms_.emplace(exponent, coeff);
  return x;
}

std::vector<std::pair<RatVector, Rational>> KElement::terms() const {
  std::vector<std::pair<RatVector, Rational>> out;
  for (const auto& [e, c] : terms_) {
    RatVector q;
    for (const auto& v : e) {
      Rational r(v, den_);
      r.canonicalize();
      q.push_back(r);
    }
    out.emplace_back(std::move(q), c);
  }
  return out;
}

Rational KElement::constant_term() const {
  auto it = terms_.find(IntVector(dim_, Integer(0)));
  return it == terms_.end() ? Rational(0) : it->second;
}

void KElement::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0)
      it = terms_.erase(it);
    else
      ++it;
  }
  Integer g = den_;
  for (const auto& [e, c] : terms_) {
    for (const auto& v : e) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (terms_.empty()) {
    den_ = 1;
    return;
  }
  std::map<IntVector, Rational> reduced;
  for (auto& [e, c] : terms_) {
    IntVector s = e;
    for (auto& v : s) v /= g;
    reduced.emplace(std::move(s), c);
  }
  terms_ = std::move(reduced);
  den_ /= g;
}

KElement KElement::operator+(const KElement& o) const {
  KElement r(common_dim(*this, o));
  r.den_ = lcm(den_, o.den_);
  r.terms_ = rescaled(*this, r.den_);
  for (auto& [e, c] : rescaled(o, r.den_)) r.terms_[e] += c;
  r.normalize();
  return r;
}

KElement KElement::operator-() const {
  KElement r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

KElement KElement::operator-(const KElement& o) const { return *this + (-o); }

KElement KElement::operator*(const KElement& o) const {
  KElement r(common_dim(*this, o));
  r.den_ = lcm(den_, o.den_);
  const auto a = rescaled(*this, r.den_);
  const auto b = rescaled(o, r.den_);
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      IntVector s = ea;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += eb[i];
      r.terms_[s] += ca * cb;
    }
  r.normalize();
  return r;
}

KElement KElement::operator*(const Rational& c) const {
  KElement r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  r.normalize();
  return r;
}

KElement KElement::pow(std::int64_t n) const {
  if (n < 0) {
    if (!is_monomial()) throw Error(ErrorKind::BaseNotMonomial, "negative power of a non-monomial");
    const auto& [e, c] = *terms_.begin();
    KElement inv(dim_);
    inv.den_ = den_;
    IntVector s = e;
    for (auto& v : s) v = -v;
    inv.terms_.emplace(std::move(s), 1 / c);
    return inv.pow(-n);
  }
  KElement result = constant(dim_, 1), base = *this;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

KElement KElement::dual() const {
  KElement r(dim_);
  r.den_ = den_;
  for (const auto& [e, c] : terms_) {
    IntVector s = e;
    for (auto& v : s) v = -v;
    r.terms_.emplace(std::move(s), c);
  }
  return r;
}

KElement KElement::map_exponents(const RatMatrix& A, const RatVector& b) const {
  if (A.cols() != dim_ || b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "exponent map");
  // integer arithmetic throughout: A = Ai / a, b = bi / a, exponent = e / den_
  Integer a = 1;
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), A(i, j).get_den_mpz_t());
    mpz_lcm(a.get_mpz_t(), a.get_mpz_t(), b[i].get_den_mpz_t());
  }
  std::vector<Integer> Ai(A.rows() * A.cols());
  IntVector bi(A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < A.cols(); ++j) Ai[i * A.cols() + j] = A(i, j).get_num() * (a / A(i, j).get_den());
    bi[i] = b[i].get_num() * (a / b[i].get_den()) * den_;
  }
  KElement r(A.rows());
  r.den_ = a * den_;
  IntVector image(A.rows());
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Integer& x = image[i];
      x = bi[i];
      for (std::size_t j = 0; j < A.cols(); ++j)
        if (e[j] != 0) x += Ai[i * A.cols() + j] * e[j];
    }
    r.terms_[image] += c;
  }
  r.normalize();
  return r;
}

KElement KElement::map_exponents(const RatMatrix& A) const {
  return map_exponents(A, RatVector(A.rows(), Rational(0)));
}

std::string KElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [q, c] : terms()) {
    const bool is_const = std::all_of(q.begin(), q.end(), [](const Rational& v) { return v == 0; });
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (is_const) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << "e^" << tbo::to_string(q);
  }
  return os.str();
}

// ---------------------------------------------------------------- TPoly

TPoly TPoly::from(const KElement& c, std::int64_t t_power) {
  TPoly p(c.dim());
  p.add_term(t_power, c);
  return p;
}

KElement TPoly::coefficient(std::int64_t n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? KElement(dim_) : it->second;
}

void TPoly::add_term(std::int64_t n, const KElement& c) {
  if (c.is_zero()) return;
  auto it = coeffs_.find(n);
  if (it == coeffs_.end()) {
    coeffs_.emplace(n, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

TPoly TPoly::operator+(const TPoly& o) const {
  if (dim_ != o.dim_) throw Error(ErrorKind::DimensionMismatch, "TPoly sum");
  TPoly r = *this;
  for (const auto& [n, c] : o.coeffs_) r.add_term(n, c);
  return r;
}

TPoly TPoly::operator-(const TPoly& o) const {
  if (dim_ != o.dim_) throw Error(ErrorKind::DimensionMismatch, "TPoly difference");
  TPoly r = *this;
  for (const auto& [n, c] : o.coeffs_) r.add_term(n, -c);
  return r;
}

TPoly TPoly::operator*(const TPoly& o) const {
  if (dim_ != o.dim_) throw Error(ErrorKind::DimensionMismatch, "TPoly product");
  TPoly r(dim_);
  for (const auto& [n, a] : coeffs_)
    for (const auto& [k, b] : o.coeffs_) r.add_term(n + k, a * b);
  return r;
}

TPoly TPoly::operator*(const KElement& c) const {
  TPoly r(dim_);
  for (const auto& [n, a] : coeffs_) r.add_term(n, a * c);
  return r;
}

TPoly TPoly::shift(std::int64_t n) const {
  TPoly r(dim_);
  for (const auto& [k, a] : coeffs_) r.coeffs_.emplace(k + n, a);
  return r;
}

TPoly geometric_quotient(std::int64_t l, std::size_t dim) {
  if (l <= 0) throw Error(ErrorKind::NonpositiveL, "geometric_quotient needs l >= 1, got " + std::to_string(l));
  TPoly p(dim);
  for (std::int64_t s = 0; s < l; ++s) p = p + TPoly::from(KElement::constant(dim, 1), -s);
  return p;
}

KElement root_of_unity_filter(const TPoly& P, std::int64_t l, const KElement& base) {
  if (l <= 0) throw Error(ErrorKind::NonpositiveL, "root_of_unity_filter needs l >= 1");
  if (!base.is_monomial()) throw Error(ErrorKind::BaseNotMonomial, "filter base must be a single monomial");
  KElement out(P.dim());
  for (const auto& [n, c] : P.coefficients()) {
    if (n % l != 0) continue;
    out += c * base.pow(n / l);
  }
  return out;
}

// ---------------------------------------------------------------- specialization

std::uint64_t SpecializationPoint::monomial(const IntVector& numerator, const Integer& den) const {
  if (numerator.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "specialization dimension");
  const Integer Lz(static_cast<unsigned long>(L));
  if (Lz % den != 0)
    throw Error(ErrorKind::DenominatorNotDividingL,
                "exponent denominator " + den.get_str() + " does not divide " + std::to_string(L));
  const Integer scale = Lz / den;
  const std::uint64_t order = field.modulus() - 1;
  const bool small_scale = scale.fits_slong_p();
  std::uint64_t value = 1;
  for (std::size_t i = 0; i < numerator.size(); ++i) {
    if (numerator[i] == 0) continue;
    std::uint64_t reduced;
    if (small_scale && numerator[i].fits_slong_p()) {
      const __int128 e = static_cast<__int128>(numerator[i].get_si()) * scale.get_si();
      __int128 r = e % static_cast<__int128>(order);
      if (r < 0) r += order;
      reduced = static_cast<std::uint64_t>(r);
    } else {
      Integer e = numerator[i] * scale, r;
      mpz_fdiv_r_ui(r.get_mpz_t(), e.get_mpz_t(), order);
      reduced = r.get_ui();
    }
    value = field.mul(value, field.pow(y[i], reduced));
  }
  return value;
}

SpecializationPoint SpecializationPoint::twisted(const IntVector& v) const {
  if (v.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "twist dimension");
  SpecializationPoint s = *this;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v[i].get_mpz_t(), L);
    s.y[i] = field.mul(y[i], field.pow(zeta, r.get_ui()));
  }
  return s;
}

SpecializationPoint random_specialization(std::uint64_t L, std::size_t dim, std::mt19937_64& rng,
                                          unsigned prime_bits) {
  SpecializationPoint s;
  s.L = L;
  s.field = PrimeField(random_prime_with_root(L, prime_bits, rng));
  s.zeta = primitive_root_of_unity(s.field, L, rng);
  s.y.resize(dim);
  return resample(s, rng);
}

SpecializationPoint resample(const SpecializationPoint& s, std::mt19937_64& rng) {
  SpecializationPoint t = s;
  std::uniform_int_distribution<std::uint64_t> dist(1, s.field.modulus() - 1);
  for (auto& v : t.y) v = dist(rng);
  return t;
}

std::uint64_t specialize(const KElement& x, const SpecializationPoint& s) {
  const PrimeField& F = s.field;
  std::uint64_t total = 0;
  for (const auto& [e, c] : x.numerators())
    total = F.add(total, F.mul(F.from_rational(c), s.monomial(e, x.denominator())));
  return total;
}

}  // namespace tbo
