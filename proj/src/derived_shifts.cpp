#include <algorithm>

#include "gshift/encoder.hpp"

namespace gshift {

namespace {

// Socle of a row module: its elements killed by p.
ResidueMatrix socle_rows(const ResidueMatrix& rows, std::int64_t p) {
  return combine_rows(left_kernel(scale(rows, p)), rows);
}

// Torsion of the projection on [a - margin, b + margin], restricted to [a, b].
ResidueMatrix wide_torsion(const GroupShift& g, std::int64_t p, std::int64_t a, std::int64_t b, int margin) {
  const SymbolEmbedding emb(g.alphabet);
  const std::int64_t lo = a - margin, hi = b + margin;
  const ResidueMatrix wide = window_projection(g, lo, hi).form.matrix;
  return select_columns(socle_rows(wide, p), position_columns(lo, emb.rank(), a, b));
}

}  // namespace

GroupShift socle_shift(const GroupShift& g, std::int64_t p, int horizon) {
  if (horizon < 1) throw std::invalid_argument("socle_shift: horizon must be positive");
  if (!is_prime(p)) throw std::invalid_argument("socle_shift: modulus is not prime");
  const PrimaryComponent pc = primary_component(g.alphabet, p);
  GroupShift out;
  out.alphabet = g.alphabet;

  const GroupShift gp = primary_shift(g, p);
  if (valuation(std::max<std::int64_t>(pc.group.exponent(), 1), p) <= 1) {
    for (const auto& w : gp.generators) out.generators.push_back(embed_word(pc, w, g.alphabet.rank()));
    out.declared_memory = g.declared_memory;
    return out;
  }

  const SymbolEmbedding emb(gp.alphabet);
  const int margin = default_margin(gp);
  std::vector<Word> gens;
  for (int len = 1; len <= horizon; ++len) {
    const std::int64_t b = len - 1;
    const WindowModule finite = finite_members(gp, 0, b, margin);
    const CanonicalRowForm socle = howell_form(socle_rows(finite.form.matrix, p));
    ResidueMatrix current(emb.modulus(), 0, static_cast<std::size_t>(len) * emb.rank());
    const auto add_translates = [&](const Word& w) {
      for (std::int64_t n = 0; n + static_cast<std::int64_t>(w.support_length()) <= len; ++n) {
        current.append_row(emb.window_vector(shift(w, -n), 0, b));
      }
    };
    for (const auto& w : gens) add_translates(w);
    CanonicalRowForm have = howell_form(current);
    for (std::size_t r = 0; r < socle.matrix.rows(); ++r) {
      if (have.contains(socle.matrix.row(r))) continue;
      Word w = emb.word_from_window(socle.matrix.row(r), 0);
      w = shift(w, w.first());
      gens.push_back(w);
      add_translates(w);
      have = howell_form(current);
    }
  }

  GroupShift local{gp.alphabet, gens, std::nullopt};
  for (int len = 1; len <= horizon; ++len) {
    const ResidueMatrix want = wide_torsion(gp, p, 0, len - 1, margin);
    if (!row_span_contains(window_projection(local, 0, len - 1).form.matrix, want)) {
      throw SearchFailure("socle_shift: finite socle words up to length " + std::to_string(horizon) +
                          " miss torsion on window [0, " + std::to_string(len - 1) + "]");
    }
  }
  for (const auto& w : gens) out.generators.push_back(embed_word(pc, w, g.alphabet.rank()));
  return out;
}

GroupShift multiple_shift(const GroupShift& g, std::int64_t p, int r) {
  if (r < 0) throw std::invalid_argument("multiple_shift: negative power");
  if (!is_prime(p)) throw std::invalid_argument("multiple_shift: modulus is not prime");
  const std::int64_t pr = ipow(p, r);
  const std::int64_t ep = std::max<std::int64_t>(primary_component(g.alphabet, p).group.exponent(), 1);
  if (r > 0 && pr >= ep) throw std::invalid_argument("multiple_shift: p^r must be below the exponent of the p-part");
  GroupShift out;
  out.alphabet = g.alphabet;
  if (r == 0) out.declared_memory = g.declared_memory;
  for (const auto& w : g.generators) {
    Word m = multiply(g.alphabet, pr, w);
    if (!m.is_zero()) out.generators.push_back(std::move(m));
  }
  return out;
}

FiniteAbelianGroup quotient_alphabet(const FiniteAbelianGroup& h, std::int64_t p) {
  std::vector<CyclicFactor> factors;
  for (const auto& f : h.factors()) {
    if (f.prime == p) factors.push_back({p, 1});
  }
  return FiniteAbelianGroup::from_factors(std::move(factors));
}

Word quotient_word(const FiniteAbelianGroup& h, std::int64_t p, const Word& w) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    if (h.factors()[i].prime == p) idx.push_back(i);
  }
  if (w.is_zero()) return Word(idx.size());
  std::vector<GroupElement> symbols;
  for (const auto& s : w.symbols()) {
    GroupElement q;
    for (std::size_t i : idx) q.coords.push_back(s.coords[i] % p);
    symbols.push_back(std::move(q));
  }
  return Word(w.first(), std::move(symbols), idx.size());
}

GroupShift quotient_shift(const GroupShift& g, std::int64_t p) {
  GroupShift out;
  out.alphabet = quotient_alphabet(g.alphabet, p);
  for (const auto& w : g.generators) {
    Word q = quotient_word(g.alphabet, p, w);
    if (!q.is_zero()) out.generators.push_back(std::move(q));
  }
  return out;
}

bool MultipleFiniteParts::equal() const {
  return scaled_finite.a == derived_finite.a && scaled_finite.b == derived_finite.b &&
         scaled_finite.form == derived_finite.form;
}

MultipleFiniteParts multiple_finite_parts(const GroupShift& g, std::int64_t p, int r, std::int64_t a,
                                          std::int64_t b, int margin) {
  const GroupShift derived = multiple_shift(g, p, r);
  const SymbolEmbedding emb(g.alphabet);
  // Finite words of G near [a, b], scaled, then those landing inside [a, b].
  const std::int64_t lo = a - margin, hi = b + margin;
  const ResidueMatrix scaled = scale(finite_members(g, lo, hi, margin).form.matrix, ipow(p, r));
  std::vector<std::size_t> outside = position_columns(lo, emb.rank(), lo, a - 1);
  const auto right = position_columns(lo, emb.rank(), b + 1, hi);
  outside.insert(outside.end(), right.begin(), right.end());
  const ResidueMatrix inside = vanishing_submodule(scaled, outside);
  return {make_window_module(a, b, select_columns(inside, position_columns(lo, emb.rank(), a, b))),
          finite_members(derived, a, b, margin)};
}

Word lift_height(const GroupShift& g, const Word& x, std::int64_t p, int h, int pad_cap) {
  if (h < 0) throw std::invalid_argument("lift_height: negative height");
  if (h == 0 || x.is_zero()) return h == 0 ? x : Word(g.alphabet.rank());
  const SymbolEmbedding emb(g.alphabet);
  const int margin = default_margin(g);
  const Residue ph = ipow(p, h);
  for (int ext = 0; ext <= 2 * pad_cap; ++ext) {
    for (int left = std::max(0, ext - pad_cap); left <= std::min(ext, pad_cap); ++left) {
      const std::int64_t lo = x.first() - left, hi = x.last() + (ext - left);
      const ResidueMatrix rows = finite_members(g, lo, hi, margin).form.matrix;
      if (rows.empty()) continue;
      const auto sol = solve_linear(scale(rows, ph).transpose(), emb.window_vector(x, lo, hi));
      if (!sol) continue;
      ResidueMatrix coeffs(rows.modulus(), 1, rows.rows());
      for (std::size_t k = 0; k < rows.rows(); ++k) coeffs.set(0, k, sol->particular[k]);
      return emb.word_from_window(combine_rows(coeffs, rows).row(0), lo);
    }
  }
  throw SearchFailure("lift_height: no finite p^" + std::to_string(h) + "-preimage within padding " +
                      std::to_string(pad_cap));
}

int height_in_shift(const GroupShift& g, const Word& x, std::int64_t p, int pad_cap) {
  if (x.is_zero()) return kInfiniteHeight;
  const int e = valuation(std::max<std::int64_t>(primary_component(g.alphabet, p).group.exponent(), 1), p);
  int h = 0;
  while (h < e) {
    try {
      lift_height(g, x, p, h + 1, pad_cap);
    } catch (const SearchFailure&) {
      break;
    }
    ++h;
  }
  return h;
}

}  // namespace gshift
