#include "brokenlines/linalg.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bl {

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Matrix m(n, n);
  for (int j = 0; j < n; ++j) m.at(perm[j], j) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  Matrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) {
      if (sgn(rows[i][j]) != 0) m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

const Rational& Matrix::at(int r, int c) const {
  static const Rational zero(0);
  const auto& row = data_[r];
  auto it = row.find(c);
  return it == row.end() ? zero : it->second;
}

long Matrix::nonzeros() const {
  long n = 0;
  for (const auto& row : data_) {
    for (const auto& [c, x] : row) n += sgn(x) != 0;
  }
  return n;
}

bool Matrix::is_zero() const { return nonzeros() == 0; }

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i) {
    if (at(i, i) != 1) return false;
    for (const auto& [c, x] : data_[i]) {
      if (c != i && sgn(x) != 0) return false;
    }
  }
  return true;
}

bool operator==(const Matrix& a, const Matrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (int i = 0; i < a.rows_; ++i) {
    for (const auto& [c, x] : a.data_[i]) {
      if (b.at(i, c) != x) return false;
    }
    for (const auto& [c, x] : b.data_[i]) {
      if (a.at(i, c) != x) return false;
    }
  }
  return true;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << format_rational(at(i, j));
  }
  os << "]";
  return os.str();
}

namespace {

void drop_zeros(std::map<int, Rational>& row) {
  std::erase_if(row, [](const auto& e) { return sgn(e.second) == 0; });
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matrix product: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Matrix c(a.rows(), b.cols());
  Rational t;
  for (int i = 0; i < a.rows(); ++i) {
    for (const auto& [k, x] : a.row(i)) {
      if (sgn(x) == 0) continue;
      for (const auto& [j, y] : b.row(k)) {
        if (sgn(y) == 0) continue;
        mpq_mul(t.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
        c.at(i, j) += t;
      }
    }
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: shape mismatch");
  Matrix c = a;
  for (int i = 0; i < b.rows(); ++i) {
    for (const auto& [j, y] : b.row(i)) {
      if (sgn(y) != 0) c.at(i, j) += y;
    }
  }
  return c;
}

Matrix scale(const Rational& s, const Matrix& m) {
  Matrix c(m.rows(), m.cols());
  if (sgn(s) == 0) return c;
  for (int i = 0; i < m.rows(); ++i) {
    for (const auto& [j, x] : m.row(i)) {
      if (sgn(x) != 0) c.at(i, j) = s * x;
    }
  }
  return c;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (const auto& [j, x] : a.row(i)) {
      if (sgn(x) == 0) continue;
      for (int k = 0; k < b.rows(); ++k) {
        for (const auto& [l, y] : b.row(k)) {
          if (sgn(y) != 0) c.at(i * b.rows() + k, j * b.cols() + l) = x * y;
        }
      }
    }
  }
  return c;
}

Matrix direct_sum(const std::vector<Matrix>& blocks) {
  int r = 0, c = 0;
  for (const auto& b : blocks) {
    r += b.rows();
    c += b.cols();
  }
  Matrix out(r, c);
  int r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (int i = 0; i < b.rows(); ++i) {
      for (const auto& [j, x] : b.row(i)) {
        if (sgn(x) != 0) out.at(r0 + i, c0 + j) = x;
      }
    }
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

Matrix tensor_power(const Matrix& m, int k) {
  Matrix out = Matrix::identity(1);
  for (int i = 0; i < k; ++i) out = tensor(out, m);
  return out;
}

namespace {

using Row = std::map<int, Rational>;

// row -= f * pivot
void subtract_multiple(Row& row, const Rational& f, const Row& pivot) {
  for (const auto& [j, x] : pivot) {
    if (sgn(x) != 0) row[j] -= f * x;
  }
  drop_zeros(row);
}

// Gauss-Jordan on the augmented rows [a | b]; returns the rank of a.
int row_reduce(std::vector<Row>& a, std::vector<Row>* b, int cols) {
  for (auto& row : a) drop_zeros(row);
  const int rows = static_cast<int>(a.size());
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (a[i].count(col)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[r], a[piv]);
    if (b) std::swap((*b)[r], (*b)[piv]);
    Rational p = a[r].at(col);
    for (auto& [j, x] : a[r]) x /= p;
    if (b) {
      for (auto& [j, x] : (*b)[r]) x /= p;
    }
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      auto it = a[i].find(col);
      if (it == a[i].end()) continue;
      Rational f = it->second;
      subtract_multiple(a[i], f, a[r]);
      if (b) subtract_multiple((*b)[i], f, (*b)[r]);
    }
    ++r;
  }
  return r;
}

std::vector<Row> rows_of(const Matrix& m) {
  std::vector<Row> out(m.rows());
  for (int i = 0; i < m.rows(); ++i) out[i] = m.row(i);
  return out;
}

}  // namespace

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  auto a = rows_of(m);
  auto b = rows_of(Matrix::identity(m.rows()));
  if (row_reduce(a, &b, m.cols()) != m.rows()) return std::nullopt;
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    for (const auto& [j, x] : b[i]) out.at(i, j) = x;
  }
  return out;
}

int rank(const Matrix& m) {
  auto a = rows_of(m);
  return row_reduce(a, nullptr, m.cols());
}

Matrix associator(int u, int v, int w) { return Matrix::identity(u * v * w); }

Matrix left_distributor(int u, const std::vector<int>& vs) {
  const int total = std::accumulate(vs.begin(), vs.end(), 0);
  // Source index a * total + (offset_k + x) goes to u * offset_k + a * v_k + x.
  std::vector<int> perm(static_cast<std::size_t>(u) * total);
  int offset = 0;
  for (int v : vs) {
    for (int a = 0; a < u; ++a) {
      for (int x = 0; x < v; ++x) perm[a * total + offset + x] = u * offset + a * v + x;
    }
    offset += v;
  }
  return Matrix::permutation(perm);
}

Matrix right_distributor(const std::vector<int>& vs, int w) {
  return Matrix::identity(std::accumulate(vs.begin(), vs.end(), 0) * w);
}

NonunitalAlgebra::NonunitalAlgebra(int dim, std::vector<Rational> constants)
    : dim_(dim), c_(std::move(constants)) {
  if (dim < 0) throw std::invalid_argument("algebra dimension must be nonnegative");
  if (c_.size() != static_cast<std::size_t>(dim) * dim * dim) {
    throw std::invalid_argument("expected dim^3 structure constants");
  }
}

NonunitalAlgebra NonunitalAlgebra::from_multiplication(const Matrix& mu) {
  const int d = mu.rows();
  if (mu.cols() != d * d) throw std::invalid_argument("multiplication must be d x d^2");
  std::vector<Rational> c(static_cast<std::size_t>(d) * d * d);
  for (int k = 0; k < d; ++k) {
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) c[(static_cast<std::size_t>(k) * d + i) * d + j] = mu.at(k, i * d + j);
    }
  }
  return NonunitalAlgebra(d, std::move(c));
}

Matrix NonunitalAlgebra::multiplication() const {
  Matrix mu(dim_, dim_ * dim_);
  for (int k = 0; k < dim_; ++k) {
    for (int i = 0; i < dim_; ++i) {
      for (int j = 0; j < dim_; ++j) {
        if (sgn(c(k, i, j)) != 0) mu.at(k, i * dim_ + j) = c(k, i, j);
      }
    }
  }
  return mu;
}

std::optional<AlgebraViolation> validate_algebra(const NonunitalAlgebra& a) {
  const int d = a.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      for (int k = 0; k < d; ++k) {
        for (int out = 0; out < d; ++out) {
          Rational lhs = 0, rhs = 0;
          for (int p = 0; p < d; ++p) {
            lhs += a.c(p, i, j) * a.c(out, p, k);
            rhs += a.c(p, j, k) * a.c(out, i, p);
          }
          if (lhs != rhs) {
            return AlgebraViolation{i, j, k,
                                    "(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k) +
                                        " != e" + std::to_string(i) + " (e" + std::to_string(j) + " e" +
                                        std::to_string(k) + ") in coordinate " + std::to_string(out)};
          }
        }
      }
    }
  }
  return std::nullopt;
}

NonunitalAlgebra zero_algebra(int dim) {
  return NonunitalAlgebra(dim, std::vector<Rational>(static_cast<std::size_t>(dim) * dim * dim));
}

NonunitalAlgebra rational_algebra() { return NonunitalAlgebra(1, {Rational(1)}); }

NonunitalAlgebra nilpotent3_algebra() {
  // Basis 0 = e12, 1 = e13, 2 = e23; the only nonzero product is e12 e23 = e13.
  std::vector<Rational> c(27);
  c[(1 * 3 + 0) * 3 + 2] = 1;
  return NonunitalAlgebra(3, std::move(c));
}

NonunitalAlgebra matrix2_algebra() {
  // Basis index 2a + b is e_(a+1)(b+1); e_ab e_cd = δ_bc e_ad.
  std::vector<Rational> c(64);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int d = 0; d < 2; ++d) c[((2 * a + d) * 4 + (2 * a + b)) * 4 + (2 * b + d)] = 1;
    }
  }
  return NonunitalAlgebra(4, std::move(c));
}

std::optional<NonunitalAlgebra> builtin_algebra(const std::string& name) {
  if (name == "zero" || name == "zero1") return zero_algebra(1);
  if (name == "rationals") return rational_algebra();
  if (name == "nilpotent3") return nilpotent3_algebra();
  if (name == "matrix2") return matrix2_algebra();
  return std::nullopt;
}

}  // namespace bl
