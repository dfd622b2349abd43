#include <algorithm>
#include <tuple>

#include "gshift/encoder.hpp"

namespace gshift {

namespace {

struct Build {
  std::int64_t p;
  int support_cap;
  int pad;
  std::size_t enumeration_cap;
};

ResidueMatrix socle_rows(const ResidueMatrix& rows, std::int64_t p) {
  return combine_rows(left_kernel(scale(rows, p)), rows);
}

// pi_0 of the socle words of G that start at 0 and end before `reach`.
ResidueMatrix socle_targets(const GroupShift& g, std::int64_t p, int reach, int margin) {
  const SymbolEmbedding emb(g.alphabet);
  const std::int64_t lo = -margin, hi = reach + margin;
  const ResidueMatrix wide = window_projection(g, lo, hi).form.matrix;
  const ResidueMatrix starting = vanishing_submodule(wide, position_columns(lo, emb.rank(), lo, -1));
  return select_columns(socle_rows(starting, p), position_columns(lo, emb.rank(), 0, 0));
}

struct Candidate {
  std::size_t quotient_support;
  std::size_t support;
  std::vector<Residue> coords;
  Word w;
};

Candidate make_candidate(const GroupShift& g, std::int64_t p, const SymbolEmbedding& emb, Word w) {
  Candidate c{quotient_word(g.alphabet, p, w).support_length(), w.support_length(), {}, {}};
  c.coords = emb.window_vector(w, 0, w.last());
  c.w = std::move(w);
  return c;
}

std::vector<Candidate> candidates(const GroupShift& g, const Build& b, int length, int margin) {
  const SymbolEmbedding emb(g.alphabet);
  std::vector<Candidate> out;
  const auto keep = [&](std::span<const Residue> v) {
    Word w = emb.word_from_window(v, 0);
    if (!w.is_zero() && w.first() == 0) out.push_back(make_candidate(g, b.p, emb, std::move(w)));
  };
  const CanonicalRowForm full =
      howell_form(socle_rows(finite_members(g, 0, length - 1, margin).form.matrix, b.p));
  const std::int64_t size = full.module_size();
  if (size > 0 && static_cast<std::size_t>(size) <= b.enumeration_cap) {
    for (const auto& v : module_elements(full)) keep(v);
  } else {
    for (int len = 1; len <= length; ++len) {
      const CanonicalRowForm f =
          howell_form(socle_rows(finite_members(g, 0, len - 1, margin).form.matrix, b.p));
      for (std::size_t r = 0; r < f.matrix.rows(); ++r) keep(f.matrix.row(r));
    }
  }
  std::sort(out.begin(), out.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.quotient_support, x.support, x.coords) < std::tie(y.quotient_support, y.support, y.coords);
  });
  return out;
}

CanonicalGeneratorSet build(const GroupShift& g, const Build& b) {
  CanonicalGeneratorSet set;
  set.prime = b.p;
  set.alphabet = g.alphabet;
  if (g.generators.empty()) return set;

  if (valuation(g.exponent(), b.p) > 1) {
    const CanonicalGeneratorSet lower = build(multiple_shift(g, b.p, 1), b);
    for (const auto& entry : lower.entries) {
      set.entries.push_back({entry.x, entry.height + 1, lift_height(g, entry.y, b.p, 1, b.pad)});
    }
  }

  const SymbolEmbedding emb(g.alphabet);
  const int margin = default_margin(g);
  const ResidueMatrix target = socle_targets(g, b.p, b.support_cap, margin);
  ResidueMatrix chosen(emb.modulus(), 0, emb.rank());
  for (const auto& entry : set.entries) chosen.append_row(emb.window_vector(entry.x, 0, 0));
  if (row_span_contains(chosen, target)) return set;

  // Least window whose socle words reach the target, then greedy by key.
  int length = 0;
  for (int len = 1; len <= b.support_cap && length == 0; ++len) {
    ResidueMatrix trial = chosen;
    const ResidueMatrix s = socle_rows(finite_members(g, 0, len - 1, margin).form.matrix, b.p);
    const ResidueMatrix at0 = select_columns(s, position_columns(0, emb.rank(), 0, 0));
    for (std::size_t r = 0; r < at0.rows(); ++r) trial.append_row(at0.row(r));
    if (row_span_contains(trial, target)) length = len;
  }
  if (length == 0) {
    throw SearchFailure("canonical_generators: socle words up to length " + std::to_string(b.support_cap) +
                        " do not reach the socle at position 0");
  }
  CanonicalRowForm have = howell_form(chosen);
  for (const Candidate& c : candidates(g, b, length, margin)) {
    const auto v = emb.window_vector(c.w, 0, 0);
    if (have.contains(v)) continue;
    set.entries.push_back({c.w, 0, c.w});
    chosen.append_row(v);
    have = howell_form(chosen);
    if (row_span_contains(chosen, target)) break;
  }
  return set;
}

}  // namespace

CanonicalGeneratorSet canonical_generators(const GroupShift& g, std::int64_t p, const Horizons& hz) {
  if (!is_prime(p)) throw std::invalid_argument("canonical_generators: modulus is not prime");
  GroupShift gp = g.alphabet.is_p_group(p) ? g : primary_shift(g, p);
  if (!gp.declared_memory) gp.declared_memory = finite_type_memory(gp, hz.memory_cap);
  IndexSearch search = order_controllability_index(gp, hz.past_horizon, hz.search_cap);
  if (!search.index) {
    throw NotOrderControllable("no order-controllability index up to " + std::to_string(hz.search_cap),
                               std::move(search));
  }
  const int span = static_cast<int>(gp.span());
  const Build b{p, hz.support_cap > 0 ? hz.support_cap : *search.index + span + 1,
                std::max(1, *search.index + span), hz.enumeration_cap};
  CanonicalGeneratorSet set = build(gp, b);
  set.independence_block = check_injectivity(make_encoder(set), hz.block_cap).block;
  return set;
}

}  // namespace gshift
