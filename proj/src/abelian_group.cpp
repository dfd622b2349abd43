#include "gshift/abelian_group.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gshift/ring_algebra.hpp"

namespace gshift {

std::int64_t CyclicFactor::order() const { return ipow(prime, exponent); }

bool GroupElement::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](std::int64_t c) { return c == 0; });
}

FiniteAbelianGroup FiniteAbelianGroup::from_cyclic_orders(std::span<const std::int64_t> orders) {
  FiniteAbelianGroup h;
  h.input_orders_.assign(orders.begin(), orders.end());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) throw std::invalid_argument("cyclic order must be positive");
    if (orders[i] > kMaxModulus) throw std::invalid_argument("cyclic order too large");
    for (const auto& [p, e] : factorize(orders[i])) {
      h.factors_.push_back({p, e});
      h.source_.push_back(i);
    }
  }
  std::vector<std::size_t> perm(h.factors_.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return h.factors_[a].prime < h.factors_[b].prime;
  });
  std::vector<CyclicFactor> factors;
  std::vector<std::size_t> source;
  for (auto i : perm) {
    factors.push_back(h.factors_[i]);
    source.push_back(h.source_[i]);
  }
  h.factors_ = std::move(factors);
  h.source_ = std::move(source);
  if (h.exponent() > kMaxModulus) throw std::invalid_argument("group exponent too large");
  return h;
}

FiniteAbelianGroup FiniteAbelianGroup::from_factors(std::vector<CyclicFactor> factors) {
  std::vector<std::int64_t> orders;
  for (const auto& f : factors) {
    if (!is_prime(f.prime) || f.exponent < 1) throw std::invalid_argument("invalid cyclic factor");
    orders.push_back(f.order());
  }
  return from_cyclic_orders(orders);
}

std::int64_t FiniteAbelianGroup::exponent() const {
  std::int64_t e = 1;
  for (const auto& f : factors_) e = std::lcm(e, f.order());
  return e;
}

std::int64_t FiniteAbelianGroup::order() const {
  std::int64_t n = 1;
  for (const auto& f : factors_) n *= f.order();
  return n;
}

std::vector<std::int64_t> FiniteAbelianGroup::primes() const {
  std::vector<std::int64_t> out;
  for (const auto& f : factors_) {
    if (out.empty() || out.back() != f.prime) out.push_back(f.prime);
  }
  return out;
}

bool FiniteAbelianGroup::is_p_group(std::int64_t p) const {
  return std::all_of(factors_.begin(), factors_.end(), [p](const CyclicFactor& f) { return f.prime == p; });
}

GroupElement FiniteAbelianGroup::zero() const { return {std::vector<std::int64_t>(rank(), 0)}; }

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  GroupElement r = zero();
  for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(a.coords[i] + b.coords[i], factors_[i].order());
  return r;
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  GroupElement r = zero();
  for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(-a.coords[i], factors_[i].order());
  return r;
}

GroupElement FiniteAbelianGroup::multiply(std::int64_t k, const GroupElement& a) const {
  GroupElement r = zero();
  for (std::size_t i = 0; i < rank(); ++i) {
    const std::int64_t q = factors_[i].order();
    r.coords[i] = mod(mod(k, q) * a.coords[i], q);
  }
  return r;
}

void FiniteAbelianGroup::check(const GroupElement& g) const {
  if (g.coords.size() != rank()) throw std::invalid_argument("element rank does not match group");
  for (std::size_t i = 0; i < rank(); ++i) {
    if (g.coords[i] < 0 || g.coords[i] >= factors_[i].order()) {
      throw std::invalid_argument("element coordinate not reduced");
    }
  }
}

GroupElement FiniteAbelianGroup::from_input(std::span<const std::int64_t> coords) const {
  if (coords.size() != input_orders_.size()) {
    throw std::out_of_range("expected " + std::to_string(input_orders_.size()) + " coordinates, got " +
                            std::to_string(coords.size()));
  }
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] < 0 || coords[i] >= input_orders_[i]) {
      throw std::out_of_range("coordinate " + std::to_string(coords[i]) + " outside Z" +
                              std::to_string(input_orders_[i]));
    }
  }
  GroupElement g = zero();
  for (std::size_t k = 0; k < rank(); ++k) g.coords[k] = coords[source_[k]] % factors_[k].order();
  return g;
}

std::vector<std::int64_t> FiniteAbelianGroup::to_input(const GroupElement& g) const {
  // CRT: recombine the primary residues of each input coordinate.
  std::vector<std::int64_t> out(input_orders_.size(), 0);
  for (std::size_t k = 0; k < rank(); ++k) {
    const std::size_t i = source_[k];
    const std::int64_t n = input_orders_[i];
    const std::int64_t q = factors_[k].order();
    const std::int64_t rest = n / q;
    // Idempotent e with e == 1 mod q and e == 0 mod rest.
    const std::int64_t e = mod(rest * inverse_mod(rest % q, q), n);
    out[i] = mod(out[i] + mod(g.coords[k], q) * e, n);
  }
  return out;
}

std::string FiniteAbelianGroup::to_string() const {
  if (input_orders_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < input_orders_.size(); ++i) {
    if (i > 0) s += " x ";
    s += "Z" + std::to_string(input_orders_[i]);
  }
  return s;
}

std::int64_t element_order(const FiniteAbelianGroup& h, const GroupElement& g) {
  h.check(g);
  std::int64_t n = 1;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    const std::int64_t q = h.factors()[i].order();
    n = std::lcm(n, q / gcd(g.coords[i], q));
  }
  return n;
}

int height_in_group(const FiniteAbelianGroup& h, const GroupElement& g, std::int64_t p) {
  h.check(g);
  int height = kInfiniteHeight;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    if (g.coords[i] == 0) continue;
    if (h.factors()[i].prime != p) {
      throw std::invalid_argument("element has a component outside the " + std::to_string(p) + "-part");
    }
    height = std::min(height, valuation(g.coords[i], p));
  }
  return height;
}

GroupElement PrimaryComponent::project(const GroupElement& g) const {
  GroupElement r{std::vector<std::int64_t>(factor_indices.size())};
  for (std::size_t k = 0; k < factor_indices.size(); ++k) r.coords[k] = g.coords[factor_indices[k]];
  return r;
}

GroupElement PrimaryComponent::embed(const GroupElement& g, std::size_t parent_rank) const {
  GroupElement r{std::vector<std::int64_t>(parent_rank, 0)};
  for (std::size_t k = 0; k < factor_indices.size(); ++k) r.coords[factor_indices[k]] = g.coords[k];
  return r;
}

PrimaryComponent primary_component(const FiniteAbelianGroup& h, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  PrimaryComponent pc;
  pc.prime = p;
  std::vector<CyclicFactor> factors;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    if (h.factors()[i].prime != p) continue;
    factors.push_back(h.factors()[i]);
    pc.factor_indices.push_back(i);
  }
  pc.group = FiniteAbelianGroup::from_factors(std::move(factors));
  return pc;
}

FiniteAbelianGroup parse_group(const std::string& text) {
  std::string normalized;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    normalized += (ch == '*') ? 'x' : static_cast<char>(std::tolower(c));
  }
  std::istringstream in(normalized);
  std::vector<std::int64_t> orders;
  std::string token;
  bool expect_factor = true;
  while (in >> token) {
    // Tokens may be glued to separators, e.g. "z4xz2".
    std::size_t pos = 0;
    while (pos < token.size()) {
      if (token[pos] == 'x') {
        if (expect_factor) throw std::invalid_argument("unexpected separator in group '" + text + "'");
        expect_factor = true;
        ++pos;
        continue;
      }
      if (token[pos] != 'z' || !expect_factor) {
        throw std::invalid_argument("unknown group token '" + token + "'");
      }
      std::size_t end = pos + 1;
      while (end < token.size() && std::isdigit(static_cast<unsigned char>(token[end]))) ++end;
      if (end == pos + 1) throw std::invalid_argument("missing order after 'Z' in '" + token + "'");
      const std::string digits = token.substr(pos + 1, end - pos - 1);
      if (digits.size() > 10) throw std::invalid_argument("cyclic order too large: " + digits);
      const std::int64_t n = std::stoll(digits);
      if (n < 1) throw std::invalid_argument("cyclic order must be positive: Z" + digits);
      orders.push_back(n);
      expect_factor = false;
      pos = end;
    }
  }
  if (orders.empty() || expect_factor) throw std::invalid_argument("malformed group '" + text + "'");
  return FiniteAbelianGroup::from_cyclic_orders(orders);
}

}  // namespace gshift
