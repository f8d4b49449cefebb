#include "tbo/lattice.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "tbo/error.hpp"

namespace tbo {

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

namespace {
template <class V>
std::string vector_string(const V& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << to_string(v[i]);
  }
  os << ')';
  return os.str();
}
}  // namespace

std::string to_string(const IntVector& v) { return vector_string(v); }
std::string to_string(const RatVector& v) { return vector_string(v); }

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "dot product of unequal lengths");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// ---------------------------------------------------------------- IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, std::size_t cols) {
  IntMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorKind::DimensionMismatch, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) M(i, j) = rows[i][j];
  }
  return M;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) throw Error(ErrorKind::DimensionMismatch, "matrix product");
  IntMatrix P(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) P(i, j) += (*this)(i, k) * other(k, j);
    }
  return P;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = m(i, j);
}

RatVector RatMatrix::apply(const RatVector& x) const {
  if (x.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  RatVector y(rows_, Rational(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (x[j] != 0) y[i] += (*this)(i, j) * x[j];
  return y;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
  return T;
}

// ---------------------------------------------------------------- Smith form

std::size_t SnfDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SnfDecomposition::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
  return d;
}

namespace {

// Keeps A = U * S * V while elementary operations act on S.
struct SnfState {
  IntMatrix U, S, V;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < S.cols(); ++c) std::swap(S(i, c), S(j, c));
    for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
  }
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < S.cols(); ++k) S(i, k) += c * S(j, k);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= c * U(r, i);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < S.cols(); ++k) S(i, k) = -S(i, k);
    for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < S.rows(); ++r) std::swap(S(r, i), S(r, j));
    for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    if (c == 0) return;
    for (std::size_t r = 0; r < S.rows(); ++r) S(r, i) += c * S(r, j);
    for (std::size_t k = 0; k < V.cols(); ++k) V(j, k) -= c * V(i, k);
  }
};

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SnfDecomposition smith_normal_form(const IntMatrix& A) {
  const std::size_t m = A.rows(), n = A.cols();
  SnfState st{IntMatrix::identity(m), A, IntMatrix::identity(n)};
  IntMatrix& S = st.S;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = m, pj = n;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (S(i, j) != 0 && (pi == m || abs(S(i, j)) < abs(S(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) goto done;
      st.swap_rows(t, pi);
      st.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        st.add_row(i, t, -floor_div(S(i, t), S(t, t)));
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        st.add_col(j, t, -floor_div(S(t, j), S(t, t)));
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            st.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(t, t) < 0) st.negate_row(t);
  }
done:
  return SnfDecomposition{std::move(st.U), std::move(st.S), std::move(st.V)};
}

// ---------------------------------------------------------------- Hermite form

HermiteBasis hermite_row_basis(const IntMatrix& A) {
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < A.rows(); ++i) rows.push_back(A.row(i));
  const std::size_t n = A.cols();
  std::size_t pr = 0;
  std::vector<std::size_t> pivots;

  auto axpy = [](IntVector& x, const Integer& c, const IntVector& y) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += c * y[k];
  };

  for (std::size_t col = 0; col < n && pr < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = pr; i < rows.size(); ++i)
        if (rows[i][col] != 0 && (best == rows.size() || abs(rows[i][col]) < abs(rows[best][col])))
          best = i;
      if (best == rows.size()) break;
      std::swap(rows[pr], rows[best]);
      bool done = true;
      for (std::size_t i = pr + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        axpy(rows[i], -floor_div(rows[i][col], rows[pr][col]), rows[pr]);
        if (rows[i][col] != 0) done = false;
      }
      if (done) break;
    }
    if (pr >= rows.size() || rows[pr][col] == 0) continue;
    if (rows[pr][col] < 0)
      for (auto& x : rows[pr]) x = -x;
    for (std::size_t i = 0; i < pr; ++i) axpy(rows[i], -floor_div(rows[i][col], rows[pr][col]), rows[pr]);
    pivots.push_back(col);
    ++pr;
  }
  rows.resize(pr);
  return HermiteBasis{IntMatrix::from_rows(rows, n), pivots};
}

IntVector hermite_reduce(const HermiteBasis& basis, IntVector x) {
  for (std::size_t i = 0; i < basis.H.rows(); ++i) {
    const std::size_t c = basis.pivot_cols[i];
    const Integer q = floor_div(x[c], basis.H(i, c));
    if (q == 0) continue;
    for (std::size_t k = 0; k < x.size(); ++k) x[k] -= q * basis.H(i, k);
  }
  return x;
}

// ---------------------------------------------------------------- Gaussian elimination

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& M, std::size_t ncols_to_reduce) {
  std::vector<std::size_t> pivots;
  std::size_t pr = 0;
  for (std::size_t col = 0; col < ncols_to_reduce && pr < M.rows(); ++col) {
    std::size_t sel = M.rows();
    for (std::size_t i = pr; i < M.rows(); ++i)
      if (M(i, col) != 0) {
        sel = i;
        break;
      }
    if (sel == M.rows()) continue;
    if (sel != pr)
      for (std::size_t k = 0; k < M.cols(); ++k) std::swap(M(sel, k), M(pr, k));
    const Rational piv = M(pr, col);
    for (std::size_t k = 0; k < M.cols(); ++k) M(pr, k) /= piv;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      if (i == pr || M(i, col) == 0) continue;
      const Rational f = M(i, col);
      for (std::size_t k = 0; k < M.cols(); ++k) M(i, k) -= f * M(pr, k);
    }
    pivots.push_back(col);
    ++pr;
  }
  return pivots;
}

}  // namespace

std::size_t rank(const RatMatrix& A) {
  RatMatrix M = A;
  return rref(M, M.cols()).size();
}

std::size_t rank(const IntMatrix& A) { return rank(RatMatrix(A)); }

Integer determinant(const IntMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "determinant of non-square matrix");
  const std::size_t n = A.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination
  IntMatrix M = A;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (M(k, k) == 0) {
      std::size_t sel = k + 1;
      while (sel < n && M(sel, k) == 0) ++sel;
      if (sel == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(sel, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = M(i, j) * M(k, k) - M(i, k) * M(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M(i, j) = v;
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::optional<RatMatrix> inverse(const RatMatrix& A) {
  if (A.rows() != A.cols()) throw Error(ErrorKind::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = A.rows();
  RatMatrix M(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n + i) = 1;
  }
  if (rref(M, n).size() != n) return std::nullopt;
  RatMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = M(i, n + j);
  return inv;
}

std::optional<RatVector> solve_rational(const RatMatrix& A, const RatVector& b) {
  if (b.size() != A.rows()) throw Error(ErrorKind::DimensionMismatch, "solve_rational right-hand side");
  const std::size_t n = A.cols();
  RatMatrix M(A.rows(), n + 1);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) M(i, j) = A(i, j);
    M(i, n) = b[i];
  }
  const auto pivots = rref(M, n);
  for (std::size_t i = pivots.size(); i < M.rows(); ++i)
    if (M(i, n) != 0) return std::nullopt;
  RatVector x(n, Rational(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = M(i, n);
  return x;
}

std::optional<RatVector> solve_rational(const IntMatrix& A, const RatVector& b) {
  return solve_rational(RatMatrix(A), b);
}

// ---------------------------------------------------------------- vectors

IntVector primitive_vector(const RatVector& v) {
  Integer den = 1;
  for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntVector w;
  Integer g = 0;
  for (const auto& x : v) {
    Integer num = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    w.push_back(num);
  }
  if (g == 0) throw Error(ErrorKind::ZeroVector, "primitive_vector of zero vector");
  for (auto& x : w) x /= g;
  return w;
}

IntVector primitive_vector(const IntVector& v) { return primitive_vector(to_rational(v)); }

IntVector hyperplane_normal(const std::vector<IntVector>& spanning, std::size_t r) {
  if (spanning.size() + 1 != r) throw Error(ErrorKind::RankMismatch, "hyperplane needs r-1 spanning vectors");
  if (r == 1) return IntVector{Integer(1)};
  // generalized cross product: n_k = (-1)^k det(minor without column k)
  IntVector n(r);
  for (std::size_t k = 0; k < r; ++k) {
    IntMatrix minor(r - 1, r - 1);
    for (std::size_t i = 0; i + 1 < r; ++i) {
      std::size_t c = 0;
      for (std::size_t j = 0; j < r; ++j)
        if (j != k) minor(i, c++) = spanning[i][j];
    }
    n[k] = determinant(minor);
    if (k % 2 == 1) n[k] = -n[k];
  }
  bool zero = std::all_of(n.begin(), n.end(), [](const Integer& x) { return x == 0; });
  if (zero) throw Error(ErrorKind::RankMismatch, "spanning vectors are dependent");
  return primitive_vector(n);
}

// ---------------------------------------------------------------- exact simplex

namespace {

// a + b*eps with eps a positive infinitesimal; ordered lexicographically.
struct EpsRational {
  Rational a = 0, b = 0;

  EpsRational() = default;
  EpsRational(Rational a_, Rational b_) : a(std::move(a_)), b(std::move(b_)) {}
  explicit EpsRational(const Rational& a_) : a(a_), b(0) {}

  int sign() const {
    if (a != 0) return sgn(a);
    return sgn(b);
  }
  EpsRational operator+(const EpsRational& o) const { return {a + o.a, b + o.b}; }
  EpsRational operator-(const EpsRational& o) const { return {a - o.a, b - o.b}; }
  EpsRational operator-() const { return {-a, -b}; }
  EpsRational operator*(const Rational& c) const { return {a * c, b * c}; }
  EpsRational operator/(const Rational& c) const { return {a / c, b / c}; }
  bool operator<(const EpsRational& o) const { return (*this - o).sign() < 0; }
};

int sign_of(const Rational& x) { return sgn(x); }
int sign_of(const EpsRational& x) { return x.sign(); }

template <class T>
struct Tableau {
  RatMatrix A;              // m x n
  std::vector<T> rhs;       // m
  std::vector<std::size_t> basis;

  void pivot(std::size_t r, std::size_t j) {
    const Rational piv = A(r, j);
    for (std::size_t k = 0; k < A.cols(); ++k) A(r, k) /= piv;
    rhs[r] = rhs[r] / piv;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      if (i == r || A(i, j) == 0) continue;
      const Rational f = A(i, j);
      for (std::size_t k = 0; k < A.cols(); ++k) A(i, k) -= f * A(r, k);
      rhs[i] = rhs[i] - rhs[r] * f;
    }
    basis[r] = j;
  }

  T objective(const RatVector& cost) const {
    T z{};
    for (std::size_t i = 0; i < basis.size(); ++i) z = z + rhs[i] * cost[basis[i]];
    return z;
  }

  // Maximize cost . x over columns with allowed[j]; Bland's rule. Returns false if unbounded.
  bool optimize(const RatVector& cost, const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = A.cols();
      for (std::size_t j = 0; j < A.cols() && enter == A.cols(); ++j) {
        if (!allowed[j]) continue;
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        Rational d = cost[j];
        for (std::size_t i = 0; i < basis.size(); ++i) d -= cost[basis[i]] * A(i, j);
        if (d > 0) enter = j;
      }
      if (enter == A.cols()) return true;
      std::size_t leave = A.rows();
      T best{};
      for (std::size_t i = 0; i < A.rows(); ++i) {
        if (A(i, enter) <= 0) continue;
        T ratio = rhs[i] / A(i, enter);
        if (leave == A.rows() || ratio < best || (!(best < ratio) && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == A.rows()) return false;
      pivot(leave, enter);
    }
  }
};

// max c.x s.t. A x = b, x >= 0. nullopt when infeasible; throws on unbounded.
template <class T>
std::optional<T> lp_maximize(const RatMatrix& A, std::vector<T> b, const RatVector& c) {
  const std::size_t m = A.rows(), n = A.cols();
  Tableau<T> tab{RatMatrix(m, n + m), {}, {}};
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sign_of(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) tab.A(i, j) = flip ? Rational(-A(i, j)) : A(i, j);
    tab.A(i, n + i) = 1;
    tab.rhs.push_back(flip ? -b[i] : b[i]);
    tab.basis.push_back(n + i);
  }
  RatVector phase1(n + m, Rational(0));
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  std::vector<bool> all(n + m, true);
  tab.optimize(phase1, all);
  if (sign_of(tab.objective(phase1)) < 0) return std::nullopt;
  // drive remaining artificials out of the basis where possible
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (tab.A(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
  }
  RatVector phase2(n + m, Rational(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  std::vector<bool> originals(n + m, false);
  for (std::size_t j = 0; j < n; ++j) originals[j] = true;
  if (!tab.optimize(phase2, originals)) throw std::logic_error("lp_maximize: unbounded");
  return tab.objective(phase2);
}

// Variables: b_i >= 0, s+ , s-, u with a_i = s + b_i, s = s+ - s-, s+ + u = 1.
template <class T>
bool strict_cone_lp(const std::vector<IntVector>& gens, std::vector<T> target) {
  const std::size_t r = target.size(), n = gens.size();
  RatMatrix A(r + 1, n + 3);
  for (std::size_t i = 0; i < r; ++i) {
    Rational sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (gens[k].size() != r) throw Error(ErrorKind::DimensionMismatch, "cone generator dimension");
      A(i, k) = gens[k][i];
      sum += gens[k][i];
    }
    A(i, n) = sum;
    A(i, n + 1) = -sum;
  }
  A(r, n) = 1;
  A(r, n + 2) = 1;
  target.push_back(T(Rational(1)));
  RatVector c(n + 3, Rational(0));
  c[n] = 1;
  c[n + 1] = -1;
  auto opt = lp_maximize<T>(A, std::move(target), c);
  return opt && sign_of(*opt) > 0;
}

}  // namespace

bool in_strict_cone(const std::vector<IntVector>& generators, const RatVector& omega) {
  if (generators.empty())
    return std::all_of(omega.begin(), omega.end(), [](const Rational& x) { return x == 0; });
  return strict_cone_lp<Rational>(generators, omega);
}

bool in_strict_cone(const std::vector<IntVector>& generators, const RatVector& base,
                    const RatVector& direction) {
  if (base.size() != direction.size()) throw Error(ErrorKind::DimensionMismatch, "perturbation direction");
  if (generators.empty()) {
    auto zero = [](const Rational& x) { return x == 0; };
    return std::all_of(base.begin(), base.end(), zero) &&
           std::all_of(direction.begin(), direction.end(), zero);
  }
  std::vector<EpsRational> target;
  for (std::size_t i = 0; i < base.size(); ++i) target.emplace_back(base[i], direction[i]);
  return strict_cone_lp<EpsRational>(generators, std::move(target));
}

Integer saturation_index(const std::vector<IntVector>& sub, const std::vector<IntVector>& lattice_gens,
                         std::size_t dim) {
  auto as_matrix = [dim](const std::vector<IntVector>& vs) { return IntMatrix::from_rows(vs, dim); };
  std::vector<IntVector> both = sub;
  both.insert(both.end(), lattice_gens.begin(), lattice_gens.end());
  const std::size_t rs = sub.empty() ? 0 : rank(as_matrix(sub));
  const std::size_t rl = lattice_gens.empty() ? 0 : rank(as_matrix(lattice_gens));
  const std::size_t rb = both.empty() ? 0 : rank(as_matrix(both));
  if (rs != rl || rs != rb) throw Error(ErrorKind::RankMismatch, "sublattice and lattice span different spaces");
  if (sub.empty()) return 1;
  const auto snf = smith_normal_form(as_matrix(sub));
  Integer index = 1;
  for (const auto& d : snf.diagonal())
    if (d != 0) index *= d;
  return index;
}

// ---------------------------------------------------------------- RationalLattice

RationalLattice::RationalLattice(std::size_t dim, const std::vector<RatVector>& extra_generators)
    : dim_(dim), gens_(extra_generators) {
  for (const auto& g : gens_) {
    if (g.size() != dim) throw Error(ErrorKind::DimensionMismatch, "lattice generator dimension");
    for (const auto& x : g) mpz_lcm(denom_.get_mpz_t(), denom_.get_mpz_t(), x.get_den_mpz_t());
  }
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < dim; ++i) {
    IntVector e(dim, Integer(0));
    e[i] = denom_;
    rows.push_back(e);
  }
  for (const auto& g : gens_) {
    IntVector v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = g[i].get_num() * (denom_ / g[i].get_den());
    rows.push_back(v);
  }
  scaled_ = hermite_row_basis(IntMatrix::from_rows(rows, dim));
}

bool RationalLattice::contains(const RatVector& q) const {
  if (q.size() != dim_) throw Error(ErrorKind::DimensionMismatch, "lattice membership");
  IntVector v(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Rational s = q[i] * denom_;
    if (s.get_den() != 1) return false;
    v[i] = s.get_num();
  }
  const auto red = hermite_reduce(scaled_, v);
  return std::all_of(red.begin(), red.end(), [](const Integer& x) { return x == 0; });
}

Integer RationalLattice::index_over_integers() const {
  Integer det = 1;
  for (std::size_t i = 0; i < scaled_.H.rows(); ++i) det *= scaled_.H(i, scaled_.pivot_cols[i]);
  Integer full;
  mpz_pow_ui(full.get_mpz_t(), denom_.get_mpz_t(), dim_);
  return full / det;
}

bool RationalLattice::contains_lattice(const RationalLattice& other) const {
  for (const auto& g : other.gens_)
    if (!contains(g)) return false;
  return true;
}

}  // namespace tbo
