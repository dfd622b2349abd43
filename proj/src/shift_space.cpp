#include "gshift/shift_space.hpp"

#include <algorithm>
#include <numeric>

namespace gshift {

// ---------------------------------------------------------------------------
// Word

Word::Word(std::int64_t first, std::vector<GroupElement> symbols, std::size_t rank)
    : rank_(rank), first_(first), length_(symbols.size()) {
  coords_.reserve(symbols.size() * rank);
  for (const auto& s : symbols) {
    if (s.coords.size() != rank) throw std::invalid_argument("symbol rank does not match word rank");
    coords_.insert(coords_.end(), s.coords.begin(), s.coords.end());
  }
  trim();
}

Word Word::impulse(const GroupElement& g, std::int64_t at) {
  return Word(at, {g}, g.coords.size());
}

void Word::trim() {
  auto symbol_zero = [&](std::size_t i) {
    for (std::size_t c = 0; c < rank_; ++c) {
      if (coords_[i * rank_ + c] != 0) return false;
    }
    return true;
  };
  std::size_t lo = 0;
  while (lo < length_ && symbol_zero(lo)) ++lo;
  std::size_t hi = length_;
  while (hi > lo && symbol_zero(hi - 1)) --hi;
  if (lo == hi) {
    first_ = 0;
    length_ = 0;
    coords_.clear();
    return;
  }
  coords_ = std::vector<std::int64_t>(coords_.begin() + static_cast<std::ptrdiff_t>(lo * rank_),
                                      coords_.begin() + static_cast<std::ptrdiff_t>(hi * rank_));
  first_ += static_cast<std::int64_t>(lo);
  length_ = hi - lo;
}

GroupElement Word::at(std::int64_t i) const {
  GroupElement g{std::vector<std::int64_t>(rank_, 0)};
  if (is_zero() || i < first_ || i > last()) return g;
  const auto offset = static_cast<std::size_t>(i - first_) * rank_;
  std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(offset), rank_, g.coords.begin());
  return g;
}

std::vector<GroupElement> Word::symbols() const {
  std::vector<GroupElement> out;
  for (std::int64_t i = first_; i <= last(); ++i) out.push_back(at(i));
  return out;
}

namespace {

template <class Op>
Word combine(const FiniteAbelianGroup& h, const Word& a, const Word& b, Op op) {
  if (a.is_zero() && b.is_zero()) return Word(h.rank());
  std::int64_t lo, hi;
  if (a.is_zero()) {
    lo = b.first();
    hi = b.last();
  } else if (b.is_zero()) {
    lo = a.first();
    hi = a.last();
  } else {
    lo = std::min(a.first(), b.first());
    hi = std::max(a.last(), b.last());
  }
  std::vector<GroupElement> symbols;
  symbols.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) symbols.push_back(op(a.at(i), b.at(i)));
  return Word(lo, std::move(symbols), h.rank());
}

}  // namespace

Word add(const FiniteAbelianGroup& h, const Word& a, const Word& b) {
  return combine(h, a, b, [&](const GroupElement& x, const GroupElement& y) { return h.add(x, y); });
}

Word subtract(const FiniteAbelianGroup& h, const Word& a, const Word& b) {
  return combine(h, a, b, [&](const GroupElement& x, const GroupElement& y) { return h.add(x, h.negate(y)); });
}

Word multiply(const FiniteAbelianGroup& h, std::int64_t k, const Word& w) {
  if (w.is_zero()) return w;
  std::vector<GroupElement> symbols;
  for (const auto& s : w.symbols()) symbols.push_back(h.multiply(k, s));
  return Word(w.first(), std::move(symbols), h.rank());
}

Word shift(const Word& w, std::int64_t n) {
  if (w.is_zero()) return w;
  return Word(w.first() - n, w.symbols(), w.rank());
}

Word restrict_to(const Word& w, std::int64_t a, std::int64_t b) {
  if (w.is_zero() || b < a) return Word(w.rank());
  const std::int64_t lo = std::max(a, w.first());
  const std::int64_t hi = std::min(b, w.last());
  if (lo > hi) return Word(w.rank());
  std::vector<GroupElement> symbols;
  for (std::int64_t i = lo; i <= hi; ++i) symbols.push_back(w.at(i));
  return Word(lo, std::move(symbols), w.rank());
}

std::int64_t word_order(const FiniteAbelianGroup& h, const Word& w) {
  std::int64_t n = 1;
  for (const auto& s : w.symbols()) n = std::lcm(n, element_order(h, s));
  return n;
}

// ---------------------------------------------------------------------------
// Embedding and windows

SymbolEmbedding::SymbolEmbedding(const FiniteAbelianGroup& h)
    : modulus_(std::max<Residue>(h.exponent(), 2)) {
  for (const auto& f : h.factors()) scales_.push_back(h.exponent() / f.order());
}

std::vector<Residue> SymbolEmbedding::window_vector(const Word& w, std::int64_t a, std::int64_t b) const {
  const std::size_t d = rank();
  std::vector<Residue> v(static_cast<std::size_t>(b - a + 1) * d, 0);
  if (w.is_zero()) return v;
  for (std::int64_t i = std::max(a, w.first()); i <= std::min(b, w.last()); ++i) {
    const GroupElement s = w.at(i);
    for (std::size_t c = 0; c < d; ++c) {
      v[static_cast<std::size_t>(i - a) * d + c] = mod(s.coords[c] * scales_[c], modulus_);
    }
  }
  return v;
}

Word SymbolEmbedding::word_from_window(std::span<const Residue> v, std::int64_t a) const {
  const std::size_t d = rank();
  if (d == 0) return Word(0);
  std::vector<GroupElement> symbols(v.size() / d, GroupElement{std::vector<std::int64_t>(d)});
  for (std::size_t k = 0; k < symbols.size(); ++k) {
    for (std::size_t c = 0; c < d; ++c) {
      const Residue x = v[k * d + c];
      if (x % scales_[c] != 0) throw std::invalid_argument("window vector is not in the embedded alphabet");
      symbols[k].coords[c] = x / scales_[c];
    }
  }
  return Word(a, std::move(symbols), d);
}

std::size_t GroupShift::span() const {
  std::size_t s = 0;
  for (const auto& g : generators) s = std::max(s, g.support_length());
  return s;
}

std::int64_t GroupShift::exponent() const {
  std::int64_t e = 1;
  for (const auto& g : generators) e = std::lcm(e, word_order(alphabet, g));
  return e;
}

bool WindowModule::contains(const SymbolEmbedding& emb, const Word& w) const {
  if (!w.is_zero() && (w.first() < a || w.last() > b)) return false;
  return form.contains(emb.window_vector(w, a, b));
}

std::vector<Word> WindowModule::basis_words(const SymbolEmbedding& emb) const {
  std::vector<Word> out;
  for (std::size_t r = 0; r < form.rank(); ++r) out.push_back(emb.word_from_window(form.matrix.row(r), a));
  return out;
}

WindowModule make_window_module(std::int64_t a, std::int64_t b, ResidueMatrix generators) {
  WindowModule wm;
  wm.a = a;
  wm.b = b;
  wm.form = howell_form(generators);
  wm.generators = std::move(generators);
  return wm;
}

std::vector<std::size_t> position_columns(std::int64_t a, std::size_t rank, std::int64_t from, std::int64_t to) {
  std::vector<std::size_t> cols;
  for (std::int64_t i = from; i <= to; ++i) {
    for (std::size_t c = 0; c < rank; ++c) cols.push_back(static_cast<std::size_t>(i - a) * rank + c);
  }
  return cols;
}

WindowModule window_projection(const GroupShift& g, std::int64_t a, std::int64_t b) {
  if (b < a) throw std::invalid_argument("window_projection: empty interval");
  const SymbolEmbedding emb(g.alphabet);
  ResidueMatrix rows(emb.modulus(), 0, static_cast<std::size_t>(b - a + 1) * emb.rank());
  for (const auto& gen : g.generators) {
    if (gen.is_zero()) continue;
    // Translates of gen whose support meets [a, b].
    for (std::int64_t t = a - gen.last(); t <= b - gen.first(); ++t) {
      rows.append_row(emb.window_vector(shift(gen, -t), a, b));
    }
  }
  return make_window_module(a, b, std::move(rows));
}

WindowModule finite_members(const GroupShift& g, std::int64_t a, std::int64_t b, int margin) {
  const SymbolEmbedding emb(g.alphabet);
  const std::int64_t lo = a - margin, hi = b + margin;
  const WindowModule wide = window_projection(g, lo, hi);
  std::vector<std::size_t> outside = position_columns(lo, emb.rank(), lo, a - 1);
  const auto right = position_columns(lo, emb.rank(), b + 1, hi);
  outside.insert(outside.end(), right.begin(), right.end());
  const ResidueMatrix inner = vanishing_submodule(wide.form.matrix, outside);
  return make_window_module(a, b, select_columns(inner, position_columns(lo, emb.rank(), a, b)));
}

Membership member(const GroupShift& g, const Word& w, int margin) {
  if (margin < 0) throw std::invalid_argument("member: negative margin");
  if (w.is_zero()) return Membership::certified_in;
  const SymbolEmbedding emb(g.alphabet);
  const WindowModule wm = window_projection(g, w.first() - margin, w.last() + margin);
  return wm.contains(emb, w) ? Membership::certified_in : Membership::certified_out;
}

SpliceCheck check_splice(const GroupShift& g, int n, int horizon) {
  const SymbolEmbedding emb(g.alphabet);
  const std::size_t d = emb.rank();
  for (int s = 1; s <= horizon; ++s) {
    const WindowModule wm = window_projection(g, -s, n + s);
    const auto block = position_columns(-s, d, 0, n);
    const ResidueMatrix zero_on_block = vanishing_submodule(wm.form.matrix, block);
    for (std::size_t r = 0; r < zero_on_block.rows(); ++r) {
      std::vector<Residue> truncated(zero_on_block.row(r).begin(), zero_on_block.row(r).end());
      std::fill(truncated.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(s) * d), truncated.end(), 0);
      if (!wm.form.contains(truncated)) {
        return {false, s, emb.word_from_window(zero_on_block.row(r), -s)};
      }
    }
  }
  return {};
}

std::optional<int> finite_type_memory(const GroupShift& g, int cap) {
  if (cap < 1) throw std::invalid_argument("finite_type_memory: cap must be at least 1");
  const int span = static_cast<int>(g.span());
  for (int n = 1; n <= cap; ++n) {
    if (check_splice(g, n, span + n).holds) return n;
  }
  return std::nullopt;
}

Word splice(const GroupShift& g, const Word& x1, const Word& x2, std::int64_t k, int n) {
  const FiniteAbelianGroup& h = g.alphabet;
  for (std::int64_t i = k; i <= k + n; ++i) {
    if (x1.at(i) != x2.at(i)) throw std::invalid_argument("splice: words disagree on the block");
  }
  const std::int64_t lo = std::min(x1.is_zero() ? k : x1.first(), k);
  const std::int64_t hi = std::max(x2.is_zero() ? k : x2.last(), k);
  const Word w = add(h, restrict_to(x1, lo, k - 1), restrict_to(x2, k, hi));
  const auto s = static_cast<std::int64_t>(g.span()) + n;
  const SymbolEmbedding emb(h);
  const std::int64_t a = std::min(k - s, w.is_zero() ? k : w.first());
  const std::int64_t b = std::max(k + n + s, w.is_zero() ? k : w.last());
  if (!window_projection(g, a, b).contains(emb, w)) {
    throw SearchFailure("splice: no member realizes the splice in window [" + std::to_string(a) + ", " +
                        std::to_string(b) + "]");
  }
  return w;
}

int default_margin(const GroupShift& g) {
  const int span = static_cast<int>(g.span());
  if (g.declared_memory) return std::max(*g.declared_memory + 1, span);
  return std::max(2 * span + 1, 1);
}

Word project_word(const PrimaryComponent& pc, const Word& w) {
  if (w.is_zero()) return Word(pc.group.rank());
  std::vector<GroupElement> symbols;
  for (const auto& s : w.symbols()) symbols.push_back(pc.project(s));
  return Word(w.first(), std::move(symbols), pc.group.rank());
}

Word embed_word(const PrimaryComponent& pc, const Word& w, std::size_t parent_rank) {
  if (w.is_zero()) return Word(parent_rank);
  std::vector<GroupElement> symbols;
  for (const auto& s : w.symbols()) symbols.push_back(pc.embed(s, parent_rank));
  return Word(w.first(), std::move(symbols), parent_rank);
}

GroupShift primary_shift(const GroupShift& g, std::int64_t p) {
  const PrimaryComponent pc = primary_component(g.alphabet, p);
  GroupShift out;
  out.alphabet = pc.group;
  out.declared_memory = g.declared_memory;
  for (const auto& gen : g.generators) {
    Word w = project_word(pc, gen);
    if (!w.is_zero()) out.generators.push_back(std::move(w));
  }
  return out;
}

GroupShift full_shift(const FiniteAbelianGroup& h) {
  GroupShift g;
  g.alphabet = h;
  for (std::size_t i = 0; i < h.rank(); ++i) {
    GroupElement e = h.zero();
    e.coords[i] = 1;
    g.generators.push_back(Word::impulse(e, 0));
  }
  return g;
}

}  // namespace gshift
