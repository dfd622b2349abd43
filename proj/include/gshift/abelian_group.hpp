#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace gshift {

/// Z/p^e with p prime and e >= 1.
struct CyclicFactor {
  std::int64_t prime = 2;
  int exponent = 1;

  std::int64_t order() const;
  bool operator==(const CyclicFactor&) const = default;
};

/// An element of a FiniteAbelianGroup: one reduced residue per primary factor.
struct GroupElement {
  std::vector<std::int64_t> coords;

  bool is_zero() const;
  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

/// Height of the zero element.
inline constexpr int kInfiniteHeight = std::numeric_limits<int>::max();

/// Finite abelian group stored as a direct sum of cyclic prime-power factors,
/// ordered by prime and otherwise in input order. The cyclic orders the group
/// was written with are remembered so symbols can be read and printed in the
/// user's coordinates.
class FiniteAbelianGroup {
 public:
  /// Trivial group.
  FiniteAbelianGroup() = default;

  /// Decomposes Z/n_1 + ... + Z/n_k into primary factors. Orders must be >= 1.
  static FiniteAbelianGroup from_cyclic_orders(std::span<const std::int64_t> orders);
  static FiniteAbelianGroup from_factors(std::vector<CyclicFactor> factors);

  const std::vector<CyclicFactor>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }
  bool is_trivial() const { return factors_.empty(); }
  std::int64_t exponent() const;
  std::int64_t order() const;
  /// Distinct primes dividing the order, increasing.
  std::vector<std::int64_t> primes() const;
  bool is_p_group(std::int64_t p) const;

  GroupElement zero() const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement negate(const GroupElement& a) const;
  GroupElement multiply(std::int64_t k, const GroupElement& a) const;
  /// Throws std::invalid_argument when the element does not belong here.
  void check(const GroupElement& g) const;

  const std::vector<std::int64_t>& input_orders() const { return input_orders_; }
  /// Reads an element given in input coordinates; throws std::out_of_range
  /// when a coordinate is not in [0, n_i).
  GroupElement from_input(std::span<const std::int64_t> coords) const;
  std::vector<std::int64_t> to_input(const GroupElement& g) const;

  /// "Z4 x Z2 x Z9" in input form; "0" for the trivial group.
  std::string to_string() const;

  bool operator==(const FiniteAbelianGroup&) const = default;

 private:
  std::vector<CyclicFactor> factors_;
  std::vector<std::int64_t> input_orders_;
  std::vector<std::size_t> source_;  // input coordinate of each factor
};

std::int64_t element_order(const FiniteAbelianGroup& h, const GroupElement& g);

/// Largest k with g in p^k H; kInfiniteHeight for g == 0. Throws when g has a
/// nonzero coordinate outside the p-primary part.
int height_in_group(const FiniteAbelianGroup& h, const GroupElement& g, std::int64_t p);

/// The p-primary part of a group together with its coordinate embedding.
struct PrimaryComponent {
  std::int64_t prime = 2;
  FiniteAbelianGroup group;
  std::vector<std::size_t> factor_indices;  // positions of its factors in the parent

  GroupElement project(const GroupElement& g) const;
  GroupElement embed(const GroupElement& g, std::size_t parent_rank) const;
};

/// Throws std::invalid_argument when p is not prime.
PrimaryComponent primary_component(const FiniteAbelianGroup& h, std::int64_t p);

/// Parses "Z4 x Z2 x Z9" (case-insensitive, 'x' or '*' separators).
FiniteAbelianGroup parse_group(const std::string& text);

}  // namespace gshift
