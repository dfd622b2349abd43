#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gshift/abelian_group.hpp"
#include "gshift/ring_algebra.hpp"

namespace gshift {

/// Raised when a bounded search cannot produce the requested object. The
/// message names the horizon that was exhausted.
class SearchFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Finitely supported bi-infinite sequence over H, zero outside its support.
/// Stored trimmed: the symbols at first() and last() are nonzero, and the
/// zero word has first() == 0 and an empty support.
class Word {
 public:
  Word() = default;
  explicit Word(std::size_t rank) : rank_(rank) {}
  /// Symbols at positions first, first + 1, ...; trims leading/trailing zeros.
  Word(std::int64_t first, std::vector<GroupElement> symbols, std::size_t rank);

  static Word impulse(const GroupElement& g, std::int64_t at);

  std::size_t rank() const { return rank_; }
  bool is_zero() const { return length_ == 0; }
  std::int64_t first() const { return first_; }
  std::int64_t last() const { return first_ + static_cast<std::int64_t>(length_) - 1; }
  /// i_l - i_f + 1; 0 for the zero word.
  std::size_t support_length() const { return length_; }

  GroupElement at(std::int64_t i) const;
  std::vector<GroupElement> symbols() const;

  bool operator==(const Word&) const = default;

 private:
  void trim();

  std::size_t rank_ = 0;
  std::int64_t first_ = 0;
  std::size_t length_ = 0;
  std::vector<std::int64_t> coords_;  // length_ * rank_
};

Word add(const FiniteAbelianGroup& h, const Word& a, const Word& b);
Word subtract(const FiniteAbelianGroup& h, const Word& a, const Word& b);
Word multiply(const FiniteAbelianGroup& h, std::int64_t k, const Word& w);
/// shift(w, n)(i) = w(i + n): n > 0 is the backward shift, n < 0 the forward shift.
Word shift(const Word& w, std::int64_t n);
/// w on [a, b], zero elsewhere.
Word restrict_to(const Word& w, std::int64_t a, std::int64_t b);
std::int64_t word_order(const FiniteAbelianGroup& h, const Word& w);

/// H embedded in (Z/M)^rank, M = exp(H): factor i of order q_i is scaled by M / q_i.
/// Every window computation works with these coordinates.
class SymbolEmbedding {
 public:
  explicit SymbolEmbedding(const FiniteAbelianGroup& h);

  Residue modulus() const { return modulus_; }
  std::size_t rank() const { return scales_.size(); }

  std::vector<Residue> window_vector(const Word& w, std::int64_t a, std::int64_t b) const;
  Word word_from_window(std::span<const Residue> v, std::int64_t a) const;

 private:
  Residue modulus_ = 2;
  std::vector<Residue> scales_;
};

/// Closed shift-invariant subgroup of H^Z generated by the shifts of finitely
/// many finite words (the closure of their integer span).
struct GroupShift {
  FiniteAbelianGroup alphabet;
  std::vector<Word> generators;
  std::optional<int> declared_memory;

  /// Largest generator support length (0 when there are none).
  std::size_t span() const;
  /// Exponent of the subgroup: lcm of generator orders.
  std::int64_t exponent() const;
};

/// Projection G|[a,b] as a row module over Z/exp(H) in embedded coordinates.
/// Columns are ordered by position, then by factor.
struct WindowModule {
  std::int64_t a = 0;
  std::int64_t b = -1;
  ResidueMatrix generators;
  CanonicalRowForm form;

  std::size_t length() const { return static_cast<std::size_t>(b - a + 1); }
  std::int64_t size() const { return form.module_size(); }
  bool contains(const SymbolEmbedding& emb, const Word& w) const;
  /// Elements of the module as words, one per canonical row.
  std::vector<Word> basis_words(const SymbolEmbedding& emb) const;
};

WindowModule make_window_module(std::int64_t a, std::int64_t b, ResidueMatrix generators);

/// Columns of positions [from, to] inside a window starting at `a`.
std::vector<std::size_t> position_columns(std::int64_t a, std::size_t rank, std::int64_t from, std::int64_t to);

WindowModule window_projection(const GroupShift& g, std::int64_t a, std::int64_t b);

/// Words of G supported in [a, b], computed from the projection on
/// [a - margin, b + margin]. Exact once margin exceeds the finite-type memory.
WindowModule finite_members(const GroupShift& g, std::int64_t a, std::int64_t b, int margin);

enum class Membership { certified_in, certified_out };

/// Checks w against the projection on [i_f(w) - margin, i_l(w) + margin].
Membership member(const GroupShift& g, const Word& w, int margin);

/// Result of the window-scale splice check for one block length.
struct SpliceCheck {
  bool holds = true;
  int window_margin = 0;          // s of the failing window [-s, N + s]
  std::optional<Word> witness;    // member zero on [0, N] whose truncation leaves G
};

/// Splice property at block [0, N] for windows [-s, N + s], s = 1..horizon.
SpliceCheck check_splice(const GroupShift& g, int n, int horizon);

/// Least N in [1, cap] whose splice property verifies up to the default
/// horizon 2 * (span + N). Throws std::invalid_argument when cap < 1.
std::optional<int> finite_type_memory(const GroupShift& g, int cap);

/// Word equal to x1 left of k + N and to x2 from k on. Throws
/// std::invalid_argument when x1 and x2 differ on [k, k + N], SearchFailure
/// when the result is not certified in the window [k - span, k + N + span].
Word splice(const GroupShift& g, const Word& x1, const Word& x2, std::int64_t k, int n);

/// Margin used for finite-member computations when none is given.
int default_margin(const GroupShift& g);

/// The p-primary part of G: generators projected onto the p-part of H.
GroupShift primary_shift(const GroupShift& g, std::int64_t p);
Word project_word(const PrimaryComponent& pc, const Word& w);
Word embed_word(const PrimaryComponent& pc, const Word& w, std::size_t parent_rank);

/// Full shift H^Z presented by the unit impulses of H.
GroupShift full_shift(const FiniteAbelianGroup& h);

}  // namespace gshift
