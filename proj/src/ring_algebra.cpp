#include "gshift/ring_algebra.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

namespace gshift {

namespace {

void check_modulus(Residue m) {
  if (m < 2 || m > kMaxModulus) {
    throw std::invalid_argument("modulus out of range: " + std::to_string(m));
  }
}

using Row = std::vector<Residue>;

// Extended gcd on nonnegative integers: s*a + t*b == g.
struct Gcdex {
  Residue g, s, t;
};

Gcdex gcdex(Residue a, Residue b) {
  Residue old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Residue q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  return {old_r, old_s, old_t};
}

// Unit u with u*a == gcd(a, m) (mod m).
Residue normalizing_unit(Residue a, Residue m) {
  const Residue g = gcd(a, m);
  const Residue reduced_m = m / g;
  if (reduced_m == 1) return 1;
  const Residue base = inverse_mod(mod(a / g, reduced_m), reduced_m);
  for (Residue u = base;; u += reduced_m) {
    if (gcd(u, m) == 1) return u % m;
  }
}

void axpy(Row& target, Residue factor, const Row& source, Residue m) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < target.size(); ++c) {
    target[c] = mod(target[c] + factor * source[c], m);
  }
}

bool is_zero_row(const Row& row) {
  return std::all_of(row.begin(), row.end(), [](Residue v) { return v == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars

Residue mod(Residue a, Residue m) {
  Residue r = a % m;
  return r < 0 ? r + m : r;
}

Residue gcd(Residue a, Residue b) { return std::gcd(a, b); }

Residue inverse_mod(Residue a, Residue m) {
  if (m == 1) return 0;
  const auto [g, s, t] = gcdex(mod(a, m), m);
  if (g != 1) throw std::domain_error("not a unit modulo " + std::to_string(m));
  return mod(s, m);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------------------
// ResidueMatrix

ResidueMatrix::ResidueMatrix(Residue modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  check_modulus(modulus);
}

ResidueMatrix ResidueMatrix::from_rows(Residue modulus, std::size_t cols,
                                       const std::vector<std::vector<Residue>>& rows) {
  ResidueMatrix m(modulus, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

ResidueMatrix ResidueMatrix::identity(Residue modulus, std::size_t n) {
  ResidueMatrix m(modulus, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

void ResidueMatrix::set(std::size_t r, std::size_t c, Residue value) {
  data_[r * cols_ + c] = mod(value, modulus_);
}

std::vector<std::vector<Residue>> ResidueMatrix::row_vectors() const {
  std::vector<std::vector<Residue>> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.emplace_back(row(r).begin(), row(r).end());
  return out;
}

void ResidueMatrix::append_row(std::span<const Residue> values) {
  if (values.size() != cols_) throw std::invalid_argument("row length does not match column count");
  for (Residue v : values) data_.push_back(mod(v, modulus_));
  ++rows_;
}

ResidueMatrix ResidueMatrix::transpose() const {
  ResidueMatrix t(modulus_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  }
  return t;
}

// ---------------------------------------------------------------------------
// Howell form

std::int64_t CanonicalRowForm::module_size() const {
  std::int64_t size = 1;
  for (Residue a : annihilators) {
    if (size > std::numeric_limits<std::int64_t>::max() / a) return std::numeric_limits<std::int64_t>::max();
    size *= a;
  }
  return size;
}

bool CanonicalRowForm::contains(std::span<const Residue> v) const {
  if (v.size() != matrix.cols()) throw std::invalid_argument("vector length does not match form");
  const Residue m = matrix.modulus();
  Row work(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) work[c] = mod(v[c], m);
  std::size_t next = 0;
  for (std::size_t c = 0; c < work.size(); ++c) {
    if (next < pivot_columns.size() && pivot_columns[next] == c) {
      const Residue a = pivot_values[next];
      if (work[c] % a != 0) return false;
      const Residue q = work[c] / a;
      const auto prow = matrix.row(next);
      for (std::size_t k = c; k < work.size(); ++k) work[k] = mod(work[k] - q * prow[k], m);
      ++next;
    } else if (work[c] != 0) {
      return false;
    }
  }
  return true;
}

CanonicalRowForm howell_form(const ResidueMatrix& input) {
  const Residue m = input.modulus();
  const std::size_t cols = input.cols();
  std::vector<Row> pending = input.row_vectors();
  std::vector<Row> result;
  CanonicalRowForm form;

  for (std::size_t c = 0; c < cols; ++c) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (pending[i][c] == 0) continue;
      if (!pivot) {
        pivot = i;
        continue;
      }
      Row& top = pending[*pivot];
      Row& other = pending[i];
      const Residue a = top[c], b = other[c];
      const auto [g, s, t] = gcdex(a, b);
      Row new_top(cols), new_other(cols);
      for (std::size_t k = 0; k < cols; ++k) {
        new_top[k] = mod(s * top[k] + t * other[k], m);
        new_other[k] = mod((b / g) * top[k] - (a / g) * other[k], m);
      }
      top = std::move(new_top);
      other = std::move(new_other);
    }
    if (!pivot) continue;

    Row row = std::move(pending[*pivot]);
    pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(*pivot));
    const Residue unit = normalizing_unit(row[c], m);
    for (auto& v : row) v = mod(v * unit, m);
    const Residue a = row[c];

    for (auto& earlier : result) axpy(earlier, -(earlier[c] / a), row, m);

    const Residue ann = m / a;
    if (ann != 1) {
      Row multiple(cols);
      for (std::size_t k = 0; k < cols; ++k) multiple[k] = mod(ann * row[k], m);
      if (!is_zero_row(multiple)) pending.push_back(std::move(multiple));
    }
    std::erase_if(pending, is_zero_row);

    form.pivot_columns.push_back(c);
    form.pivot_values.push_back(a);
    form.annihilators.push_back(ann);
    result.push_back(std::move(row));
  }
  form.matrix = ResidueMatrix::from_rows(m, cols, result);
  return form;
}

// ---------------------------------------------------------------------------
// Solving

std::optional<LinearSolution> solve_linear(const ResidueMatrix& a, std::span<const Residue> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  const Residue m = a.modulus();
  const std::size_t eqs = a.rows();
  const std::size_t unknowns = a.cols();

  // Rows of [A^T | I]: each unknown's column of A, tagged with its coefficient.
  ResidueMatrix aug(m, unknowns, eqs + unknowns);
  for (std::size_t j = 0; j < unknowns; ++j) {
    for (std::size_t i = 0; i < eqs; ++i) aug.set(j, i, a(i, j));
    aug.set(j, eqs + j, 1);
  }
  const CanonicalRowForm form = howell_form(aug);

  Row work(eqs + unknowns, 0);
  for (std::size_t i = 0; i < eqs; ++i) work[i] = mod(b[i], m);
  std::size_t next = 0;
  for (std::size_t c = 0; c < eqs; ++c) {
    if (next < form.rank() && form.pivot_columns[next] == c) {
      const Residue p = form.pivot_values[next];
      if (work[c] % p != 0) return std::nullopt;
      const Residue q = work[c] / p;
      const auto prow = form.matrix.row(next);
      for (std::size_t k = c; k < work.size(); ++k) work[k] = mod(work[k] - q * prow[k], m);
      ++next;
    } else if (work[c] != 0) {
      return std::nullopt;
    }
  }

  LinearSolution sol;
  sol.particular.resize(unknowns);
  for (std::size_t j = 0; j < unknowns; ++j) sol.particular[j] = mod(-work[eqs + j], m);
  for (std::size_t r = next; r < form.rank(); ++r) {
    const auto prow = form.matrix.row(r);
    sol.kernel.emplace_back(prow.begin() + static_cast<std::ptrdiff_t>(eqs), prow.end());
  }
  return sol;
}

ResidueMatrix left_kernel(const ResidueMatrix& a) {
  const Residue m = a.modulus();
  const std::size_t n = a.rows();
  ResidueMatrix aug(m, n, a.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.set(i, j, a(i, j));
    aug.set(i, a.cols() + i, 1);
  }
  const CanonicalRowForm form = howell_form(aug);
  ResidueMatrix kernel(m, 0, n);
  for (std::size_t r = 0; r < form.rank(); ++r) {
    if (form.pivot_columns[r] < a.cols()) continue;
    const auto prow = form.matrix.row(r);
    kernel.append_row(prow.subspan(a.cols()));
  }
  return kernel;
}

bool independent(std::span<const ResidueVector> vectors) {
  if (vectors.empty()) return true;
  const Residue p = vectors.front().modulus;
  const std::size_t len = vectors.front().values.size();
  for (const auto& v : vectors) {
    if (v.modulus != p) throw std::invalid_argument("independent: mixed moduli");
    if (v.values.size() != len) throw std::invalid_argument("independent: mixed lengths");
  }
  if (!is_prime(p)) throw std::invalid_argument("independent: modulus must be prime");
  ResidueMatrix m(p, 0, len);
  for (const auto& v : vectors) m.append_row(v.values);
  return howell_form(m).rank() == vectors.size();
}

// ---------------------------------------------------------------------------
// Smith normal form over Z

std::vector<std::int64_t> smith_invariants(const std::vector<std::vector<std::int64_t>>& input) {
  auto a = input;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::vector<std::int64_t> diag;

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Bring the smallest nonzero entry of the trailing block to (t, t).
    for (;;) {
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] != 0 && (!best || std::llabs(a[i][j]) < std::llabs(a[best->first][best->second]))) {
            best = {{i, j}};
          }
        }
      }
      if (!best) break;
      std::swap(a[t], a[best->first]);
      for (auto& r : a) std::swap(r[t], r[best->second]);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into row t.
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i) {
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
            divisible = false;
            break;
          }
        }
      }
      if (divisible) break;
    }
    if (a[t][t] == 0) break;
    diag.push_back(std::llabs(a[t][t]));
  }
  return diag;
}

// ---------------------------------------------------------------------------
// Row-module helpers

ResidueMatrix select_columns(const ResidueMatrix& rows, std::span<const std::size_t> cols) {
  ResidueMatrix out(rows.modulus(), rows.rows(), cols.size());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t k = 0; k < cols.size(); ++k) out.set(r, k, rows(r, cols[k]));
  }
  return out;
}

ResidueMatrix vanishing_submodule(const ResidueMatrix& rows, std::span<const std::size_t> cols) {
  // Reorder so the constrained columns lead; by the Howell property the rows
  // pivoting past them generate everything that vanishes there.
  std::vector<std::size_t> order(cols.begin(), cols.end());
  std::vector<bool> constrained(rows.cols(), false);
  for (auto c : cols) constrained[c] = true;
  for (std::size_t c = 0; c < rows.cols(); ++c) {
    if (!constrained[c]) order.push_back(c);
  }
  const CanonicalRowForm form = howell_form(select_columns(rows, order));
  ResidueMatrix out(rows.modulus(), 0, rows.cols());
  Row original(rows.cols());
  for (std::size_t r = 0; r < form.rank(); ++r) {
    if (form.pivot_columns[r] < cols.size()) continue;
    const auto prow = form.matrix.row(r);
    for (std::size_t k = 0; k < order.size(); ++k) original[order[k]] = prow[k];
    out.append_row(original);
  }
  return out;
}

ResidueMatrix combine_rows(const ResidueMatrix& coefficients, const ResidueMatrix& rows) {
  if (coefficients.cols() != rows.rows()) throw std::invalid_argument("combine_rows: dimension mismatch");
  const Residue m = rows.modulus();
  ResidueMatrix out(m, coefficients.rows(), rows.cols());
  for (std::size_t i = 0; i < coefficients.rows(); ++i) {
    for (std::size_t k = 0; k < rows.rows(); ++k) {
      const Residue f = coefficients(i, k);
      if (f == 0) continue;
      for (std::size_t j = 0; j < rows.cols(); ++j) out.set(i, j, out(i, j) + f * rows(k, j));
    }
  }
  return out;
}

ResidueMatrix scale(const ResidueMatrix& rows, Residue factor) {
  ResidueMatrix out = rows;
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t c = 0; c < rows.cols(); ++c) out.set(r, c, rows(r, c) * factor);
  }
  return out;
}

bool same_row_span(const ResidueMatrix& a, const ResidueMatrix& b) {
  if (a.cols() != b.cols() || a.modulus() != b.modulus()) return false;
  return howell_form(a).matrix == howell_form(b).matrix;
}

bool row_span_contains(const ResidueMatrix& outer, const ResidueMatrix& inner) {
  const CanonicalRowForm form = howell_form(outer);
  for (std::size_t r = 0; r < inner.rows(); ++r) {
    if (!form.contains(inner.row(r))) return false;
  }
  return true;
}

// Coefficients c_r < ann_r give each element once.
void for_each_module_element(const CanonicalRowForm& form, const std::function<void(const std::vector<Residue>&)>& visit) {
  const ResidueMatrix& m = form.matrix;
  std::vector<Residue> coeff(m.rows(), 0);
  std::vector<Residue> v(m.cols(), 0);
  while (true) {
    visit(v);
    std::size_t r = 0;
    for (; r < m.rows(); ++r) {
      ++coeff[r];
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = mod(v[c] + m(r, c), m.modulus());
      if (coeff[r] < form.annihilators[r]) break;
      // Wrapped: remove ann_r * row, which need not vanish beyond the pivot.
      for (std::size_t c = 0; c < m.cols(); ++c) {
        v[c] = mod(v[c] - form.annihilators[r] * m(r, c), m.modulus());
      }
      coeff[r] = 0;
    }
    if (r == m.rows()) break;
  }
}

std::vector<std::vector<Residue>> module_elements(const CanonicalRowForm& form) {
  std::vector<std::vector<Residue>> out;
  for_each_module_element(form, [&](const std::vector<Residue>& v) { out.push_back(v); });
  return out;
}

}  // namespace gshift
