#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gshift {

using Residue = std::int64_t;

/// Largest modulus accepted by the residue-ring routines. Products of two
/// reduced residues must fit in a signed 64-bit integer.
inline constexpr Residue kMaxModulus = Residue{1} << 31;

/// Dense row-major matrix over Z/m with every entry kept in [0, m).
class ResidueMatrix {
 public:
  ResidueMatrix() = default;
  ResidueMatrix(Residue modulus, std::size_t rows, std::size_t cols);

  /// Builds a matrix from explicit rows; entries are reduced into [0, m).
  static ResidueMatrix from_rows(Residue modulus, std::size_t cols,
                                 const std::vector<std::vector<Residue>>& rows);
  static ResidueMatrix identity(Residue modulus, std::size_t n);

  Residue modulus() const { return modulus_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  Residue operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Residue value);

  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<std::vector<Residue>> row_vectors() const;

  void append_row(std::span<const Residue> values);

  ResidueMatrix transpose() const;

  bool operator==(const ResidueMatrix&) const = default;

 private:
  Residue modulus_ = 2;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Residue> data_;
};

/// Vector over Z/m tagged with its modulus, used where callers may mix rings.
struct ResidueVector {
  Residue modulus = 2;
  std::vector<Residue> values;
};

/// Howell form of a row span: echelon rows whose pivots divide the modulus,
/// entries above each pivot reduced below it, and closed under the
/// annihilator multiples of each row. Unique for a given row module.
struct CanonicalRowForm {
  ResidueMatrix matrix;
  std::vector<std::size_t> pivot_columns;
  std::vector<Residue> pivot_values;
  /// modulus / pivot: the additive order contributed by each row.
  std::vector<Residue> annihilators;

  std::size_t rank() const { return pivot_columns.size(); }
  /// Number of elements of the row module (saturates at INT64_MAX).
  std::int64_t module_size() const;
  bool contains(std::span<const Residue> v) const;

  bool operator==(const CanonicalRowForm&) const = default;
};

CanonicalRowForm howell_form(const ResidueMatrix& m);

/// Solution of A x = b: one particular x plus generators of {x : A x = 0}.
struct LinearSolution {
  std::vector<Residue> particular;
  std::vector<std::vector<Residue>> kernel;
};

std::optional<LinearSolution> solve_linear(const ResidueMatrix& a, std::span<const Residue> b);

/// Generators (as rows) of the left kernel {x : x A = 0}.
ResidueMatrix left_kernel(const ResidueMatrix& a);

/// Linear independence over a prime field Z/p.
bool independent(std::span<const ResidueVector> vectors);

/// Nonzero invariant factors d_1 | d_2 | ... of an integer matrix.
std::vector<std::int64_t> smith_invariants(const std::vector<std::vector<std::int64_t>>& m);

// Row-module helpers shared by the window computations.

/// Rows of the submodule of row-span(rows) whose entries vanish on `cols`.
ResidueMatrix vanishing_submodule(const ResidueMatrix& rows, std::span<const std::size_t> cols);
ResidueMatrix select_columns(const ResidueMatrix& rows, std::span<const std::size_t> cols);
/// x * rows for every row x of `coefficients`.
ResidueMatrix combine_rows(const ResidueMatrix& coefficients, const ResidueMatrix& rows);
ResidueMatrix scale(const ResidueMatrix& rows, Residue factor);
bool same_row_span(const ResidueMatrix& a, const ResidueMatrix& b);
bool row_span_contains(const ResidueMatrix& outer, const ResidueMatrix& inner);
/// Every element of the row module, each exactly once, in a fixed order.
std::vector<std::vector<Residue>> module_elements(const CanonicalRowForm& form);
/// Same order as module_elements without storing the elements.
void for_each_module_element(const CanonicalRowForm& form, const std::function<void(const std::vector<Residue>&)>& visit);

// Scalar number theory.

Residue mod(Residue a, Residue m);
Residue gcd(Residue a, Residue b);
/// Inverse of a unit modulo m; throws std::domain_error otherwise.
Residue inverse_mod(Residue a, Residue m);
bool is_prime(std::int64_t n);
/// Prime-power factorization as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);
std::int64_t ipow(std::int64_t base, int exp);
/// Exponent of p in n (n != 0).
int valuation(std::int64_t n, std::int64_t p);

}  // namespace gshift
