#pragma once

// Finite-dimensional vector spaces over Q in a strict skeletal model: an object
// is its dimension, a map is a target x source matrix. Matrices are stored as
// sparse rows since almost every map here is a tensor product of sparse pieces.
//
// Tensor products use the Kronecker convention: the basis of V ⊗ W is
// (v_i ⊗ w_j) indexed by i * dim W + j, so j runs fastest. With this
// convention (U ⊗ V) ⊗ W and U ⊗ (V ⊗ W) coincide on the nose and the
// associator is the identity.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "brokenlines/rational.hpp"

namespace bl {

class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows)) {}

  static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
  static Matrix identity(int n);
  /// Column j has a single 1 in row perm[j].
  static Matrix permutation(const std::vector<int>& perm);
  static Matrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  /// Inserts an explicit entry; zeros written this way are ignored by every
  /// operation.
  Rational& at(int r, int c) { return data_[r][c]; }
  const Rational& at(int r, int c) const;
  /// Stored entries of row r by column; may include explicit zeros.
  const std::map<int, Rational>& row(int r) const { return data_[r]; }
  /// Number of nonzero entries.
  long nonzeros() const;

  bool is_zero() const;
  bool is_identity() const;

  friend bool operator==(const Matrix& a, const Matrix& b);
  std::string to_string() const;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<std::map<int, Rational>> data_;
};

/// a ∘ b. Throws std::invalid_argument on a dimension mismatch.
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix scale(const Rational& s, const Matrix& m);

/// Kronecker product a ⊗ b.
Matrix tensor(const Matrix& a, const Matrix& b);
/// Block diagonal map; the empty sum is the 0 x 0 matrix.
Matrix direct_sum(const std::vector<Matrix>& blocks);
/// Tensor power m^{⊗k}; k = 0 gives the 1 x 1 identity.
Matrix tensor_power(const Matrix& m, int k);

/// Gauss-Jordan over Q; nullopt when singular or not square.
std::optional<Matrix> inverse(const Matrix& m);
int rank(const Matrix& m);

/// (U ⊗ V) ⊗ W -> U ⊗ (V ⊗ W).
Matrix associator(int u, int v, int w);
/// U ⊗ (V_1 ⊕ ... ⊕ V_r) -> (U ⊗ V_1) ⊕ ... ⊕ (U ⊗ V_r).
Matrix left_distributor(int u, const std::vector<int>& vs);
/// (V_1 ⊕ ... ⊕ V_r) ⊗ W -> (V_1 ⊗ W) ⊕ ... ⊕ (V_r ⊗ W).
Matrix right_distributor(const std::vector<int>& vs, int w);

/// e_i · e_j = Σ_k c(k, i, j) e_k.
class NonunitalAlgebra {
 public:
  NonunitalAlgebra(int dim, std::vector<Rational> constants);
  static NonunitalAlgebra from_multiplication(const Matrix& mu);

  int dim() const { return dim_; }
  const Rational& c(int k, int i, int j) const { return c_[(static_cast<std::size_t>(k) * dim_ + i) * dim_ + j]; }
  /// The d x d^2 matrix of A ⊗ A -> A.
  Matrix multiplication() const;

  friend bool operator==(const NonunitalAlgebra&, const NonunitalAlgebra&) = default;

 private:
  int dim_;
  std::vector<Rational> c_;
};

struct AlgebraViolation {
  int i, j, k;
  std::string message;
};

/// Exhaustive check of (e_i e_j) e_k = e_i (e_j e_k); reports the first bad triple.
std::optional<AlgebraViolation> validate_algebra(const NonunitalAlgebra& a);

NonunitalAlgebra zero_algebra(int dim);
/// Q with its product.
NonunitalAlgebra rational_algebra();
/// Strictly upper triangular 3 x 3 matrices, basis e12, e13, e23.
NonunitalAlgebra nilpotent3_algebra();
/// All 2 x 2 matrices, basis e11, e12, e21, e22.
NonunitalAlgebra matrix2_algebra();

/// "zero", "zero1", "rationals", "nilpotent3", "matrix2"; nullopt otherwise.
std::optional<NonunitalAlgebra> builtin_algebra(const std::string& name);

}  // namespace bl
