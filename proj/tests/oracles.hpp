#pragma once

// Brute-force reference computations for the tests. Everything here works by
// exhaustive enumeration in input coordinates and shares no code with the
// row-form machinery under test.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gshift/shift_space.hpp"

namespace oracle {

using Vec = std::vector<std::int64_t>;

/// Subgroup of (Z/m)^n generated by `gens`, by closure under addition.
inline std::set<Vec> span(std::int64_t m, std::size_t n, const std::vector<Vec>& gens) {
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> frontier{Vec(n, 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier) {
      for (const auto& g : gens) {
        Vec s(n);
        for (std::size_t k = 0; k < n; ++k) s[k] = (v[k] + g[k]) % m;
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// Every vector of (Z/m)^n.
inline std::vector<Vec> all_vectors(std::int64_t m, std::size_t n) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t k = 0;
    while (k < n && ++v[k] == m) v[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// A x = b over Z/m, every x.
inline std::vector<Vec> solutions(std::int64_t m, const std::vector<Vec>& a, const Vec& b, std::size_t cols) {
  std::vector<Vec> out;
  for (const auto& x : all_vectors(m, cols)) {
    bool ok = true;
    for (std::size_t r = 0; r < a.size() && ok; ++r) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < cols; ++c) s += a[r][c] * x[c];
      ok = ((s - b[r]) % m + m) % m == 0;
    }
    if (ok) out.push_back(x);
  }
  return out;
}

/// True iff no nonzero coefficient vector over F_p combines `vs` to zero.
inline bool independent_mod_p(std::int64_t p, const std::vector<Vec>& vs) {
  if (vs.empty()) return true;
  const std::size_t n = vs[0].size();
  for (const auto& c : all_vectors(p, vs.size())) {
    if (std::all_of(c.begin(), c.end(), [](std::int64_t x) { return x == 0; })) continue;
    Vec s(n, 0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      for (std::size_t k = 0; k < n; ++k) s[k] = (s[k] + c[i] * vs[i][k]) % p;
    }
    if (std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; })) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Window codes in input coordinates.

/// Symbols of `w` at positions [a, b] flattened in the alphabet's input
/// coordinates, position-major.
inline Vec window(const gshift::FiniteAbelianGroup& h, const gshift::Word& w, std::int64_t a, std::int64_t b) {
  Vec out;
  for (std::int64_t i = a; i <= b; ++i) {
    const auto c = h.to_input(w.at(i));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

/// Radix of each flattened coordinate of a window of `len` positions.
inline Vec radices(const gshift::FiniteAbelianGroup& h, std::size_t len) {
  Vec out;
  for (std::size_t i = 0; i < len; ++i) out.insert(out.end(), h.input_orders().begin(), h.input_orders().end());
  return out;
}

/// Subgroup closure with per-coordinate radices.
inline std::set<Vec> mixed_span(const Vec& radix, const std::vector<Vec>& gens) {
  const std::size_t n = radix.size();
  std::set<Vec> seen{Vec(n, 0)};
  std::vector<Vec> frontier{Vec(n, 0)};
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& v : frontier) {
      for (const auto& g : gens) {
        Vec s(n);
        for (std::size_t k = 0; k < n; ++k) s[k] = (v[k] + g[k]) % radix[k];
        if (seen.insert(s).second) next.push_back(s);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

/// G|[a, b]: closure of the restrictions of every generator shift meeting [a, b].
inline std::set<Vec> projection(const gshift::GroupShift& g, std::int64_t a, std::int64_t b) {
  std::vector<Vec> gens;
  for (const auto& w : g.generators) {
    if (w.is_zero()) continue;
    for (std::int64_t n = a - w.last(); n <= b - w.first(); ++n) gens.push_back(window(g.alphabet, gshift::shift(w, -n), a, b));
  }
  return mixed_span(radices(g.alphabet, static_cast<std::size_t>(b - a + 1)), gens);
}

inline std::int64_t coord_order(std::int64_t c, std::int64_t q) { return q / std::gcd(c, q); }

/// Order of a flattened segment [from, to) of a window vector.
inline std::int64_t segment_order(const Vec& v, const Vec& radix, std::size_t from, std::size_t to) {
  std::int64_t o = 1;
  for (std::size_t k = from; k < to; ++k) o = std::lcm(o, coord_order(v[k], radix[k]));
  return o;
}

/// Literal steering condition on the window [-L, n + L]: every element has
/// a partner agreeing on [-L, 0] and vanishing on [n + 1, n + L]; with
/// `order_dividing`, the partner's order on [1, n] must divide the element's.
inline bool steering(const gshift::GroupShift& g, int n, int L, bool order_dividing) {
  const std::size_t d = g.alphabet.input_orders().size();
  const auto p = projection(g, -L, n + L);
  const Vec radix = radices(g.alphabet, static_cast<std::size_t>(n + 2 * L + 1));
  const std::size_t past_end = static_cast<std::size_t>(L + 1) * d;
  const std::size_t mid_end = past_end + static_cast<std::size_t>(n) * d;
  std::map<Vec, std::set<std::int64_t>> reachable;  // past -> middle orders of steered elements
  for (const auto& v : p) {
    if (!std::all_of(v.begin() + static_cast<std::ptrdiff_t>(mid_end), v.end(), [](std::int64_t x) { return x == 0; })) continue;
    reachable[Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(past_end))].insert(
        segment_order(v, radix, past_end, mid_end));
  }
  for (const auto& v : p) {
    const auto it = reachable.find(Vec(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(past_end)));
    if (it == reachable.end()) return false;
    if (!order_dividing) continue;
    const std::int64_t o = segment_order(v, radix, past_end, mid_end);
    if (std::none_of(it->second.begin(), it->second.end(), [&](std::int64_t r) { return o % r == 0; })) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Random instances.

inline gshift::Word random_word(const gshift::FiniteAbelianGroup& h, std::mt19937_64& rng, std::int64_t first,
                                int length) {
  std::vector<gshift::GroupElement> symbols;
  for (int i = 0; i < length; ++i) {
    Vec c;
    for (auto q : h.input_orders()) c.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q)));
    symbols.push_back(h.from_input(c));
  }
  return gshift::Word(first, std::move(symbols), h.rank());
}

/// Random shift with |H| <= 8, at most two generators of support <= 3.
inline gshift::GroupShift random_small_shift(std::mt19937_64& rng) {
  static const std::vector<std::string> alphabets = {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
                                                     "Z2 x Z2", "Z2 x Z4", "Z2 x Z2 x Z2"};
  gshift::GroupShift g;
  g.alphabet = gshift::parse_group(alphabets[rng() % alphabets.size()]);
  while (g.generators.empty()) {
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int k = 0; k < count; ++k) {
      gshift::Word w = random_word(g.alphabet, rng, 0, 1 + static_cast<int>(rng() % 3));
      if (!w.is_zero()) g.generators.push_back(std::move(w));
    }
  }
  return g;
}

}  // namespace oracle
