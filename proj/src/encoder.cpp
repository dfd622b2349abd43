#include "gshift/encoder.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

namespace gshift {

std::size_t Encoder::memory() const {
  std::size_t m = 0;
  for (const auto& t : taps) m = std::max(m, t.support_length());
  return m;
}

Encoder make_encoder(const CanonicalGeneratorSet& set) {
  Encoder e;
  std::vector<CyclicFactor> factors;
  for (const auto& entry : set.entries) {
    factors.push_back({set.prime, entry.height + 1});
    e.taps.push_back(entry.y);
  }
  e.source = FiniteAbelianGroup::from_factors(std::move(factors));
  e.target = set.alphabet;
  return e;
}

Word encode(const Encoder& e, const Word& message) {
  if (message.rank() != e.source.rank()) throw std::invalid_argument("message rank does not match source alphabet");
  Word out(e.target.rank());
  if (message.is_zero()) return out;
  for (std::int64_t n = message.first(); n <= message.last(); ++n) {
    const GroupElement symbol = message.at(n);
    try {
      e.source.check(symbol);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument("message symbol at " + std::to_string(n) + " outside the source alphabet");
    }
    for (std::size_t j = 0; j < e.taps.size(); ++j) {
      if (symbol.coords[j] == 0) continue;
      out = add(e.target, out, multiply(e.target, symbol.coords[j], shift(e.taps[j], -n)));
    }
  }
  return out;
}

Word encode(const Encoder& e, const Word& message, std::int64_t a, std::int64_t b) {
  return restrict_to(encode(e, message), a, b);
}

WindowModule encoder_image(const Encoder& e, std::int64_t a, std::int64_t b) {
  const SymbolEmbedding emb(e.target);
  ResidueMatrix rows(emb.modulus(), 0, static_cast<std::size_t>(b - a + 1) * emb.rank());
  for (const auto& tap : e.taps) {
    if (tap.is_zero()) continue;
    for (std::int64_t n = a - tap.last(); n <= b - tap.first(); ++n) {
      rows.append_row(emb.window_vector(shift(tap, -n), a, b));
    }
  }
  return make_window_module(a, b, std::move(rows));
}

std::optional<Word> finite_preimage(const Encoder& e, const Word& w, int pad) {
  if (w.is_zero()) return Word(e.source.rank());
  const SymbolEmbedding emb(e.target);

  struct Unknown {
    std::size_t tap;
    std::int64_t n;
  };
  std::vector<Unknown> unknowns;
  std::int64_t lo = w.first(), hi = w.last();
  for (std::size_t j = 0; j < e.taps.size(); ++j) {
    const Word& tap = e.taps[j];
    if (tap.is_zero()) continue;
    for (std::int64_t n = w.first() - tap.last() - pad; n <= w.last() - tap.first() + pad; ++n) {
      unknowns.push_back({j, n});
      lo = std::min(lo, n + tap.first());
      hi = std::max(hi, n + tap.last());
    }
  }
  if (unknowns.empty()) return std::nullopt;

  ResidueMatrix columns(emb.modulus(), 0, static_cast<std::size_t>(hi - lo + 1) * emb.rank());
  for (const auto& u : unknowns) columns.append_row(emb.window_vector(shift(e.taps[u.tap], -u.n), lo, hi));
  const auto solution = solve_linear(columns.transpose(), emb.window_vector(w, lo, hi));
  if (!solution) return std::nullopt;

  std::map<std::int64_t, GroupElement> symbols;
  for (std::size_t k = 0; k < unknowns.size(); ++k) {
    const auto& u = unknowns[k];
    auto [it, inserted] = symbols.try_emplace(u.n, e.source.zero());
    it->second.coords[u.tap] = mod(solution->particular[k], e.source.factors()[u.tap].order());
  }
  const std::int64_t first = symbols.begin()->first;
  std::vector<GroupElement> seq;
  for (std::int64_t n = first; n <= symbols.rbegin()->first; ++n) seq.push_back(symbols.at(n));
  Word message(first, std::move(seq), e.source.rank());
  if (encode(e, message) != w) return std::nullopt;
  return message;
}

// ---------------------------------------------------------------------------
// Injectivity

namespace {

struct SocleRows {
  ResidueMatrix rows;
  std::vector<std::pair<std::size_t, std::int64_t>> labels;  // (tap, shift)
};

SocleRows socle_restrictions(const Encoder& e, std::int64_t p, int n_block) {
  const SymbolEmbedding emb(e.target);
  const Residue unit = emb.modulus() / p;
  SocleRows out{ResidueMatrix(p, 0, static_cast<std::size_t>(n_block + 1) * emb.rank()), {}};
  for (std::size_t j = 0; j < e.taps.size(); ++j) {
    const CyclicFactor& f = e.source.factors()[j];
    if (f.prime != p) continue;
    const Word x = multiply(e.target, ipow(p, f.exponent - 1), e.taps[j]);
    if (x.is_zero()) continue;
    for (std::int64_t n = -x.last(); n <= n_block - x.first(); ++n) {
      auto v = emb.window_vector(shift(x, -n), 0, n_block);
      if (std::all_of(v.begin(), v.end(), [](Residue r) { return r == 0; })) continue;
      for (auto& r : v) r = (r / unit) % p;
      out.rows.append_row(v);
      out.labels.emplace_back(j, n);
    }
  }
  return out;
}

}  // namespace

InjectivityVerdict check_injectivity(const Encoder& e, int block_cap) {
  InjectivityVerdict verdict;
  verdict.block_cap = block_cap;
  const std::vector<std::int64_t> primes = e.source.primes();
  for (int n = 0; n <= block_cap; ++n) {
    bool all = true;
    for (std::int64_t p : primes) {
      const SocleRows s = socle_restrictions(e, p, n);
      if (howell_form(s.rows).rank() != s.rows.rows()) {
        all = false;
        if (n == block_cap) {
          const ResidueMatrix kernel = left_kernel(s.rows);
          std::ostringstream os;
          os << "p=" << p << " dependent on [0," << n << "]:";
          for (std::size_t k = 0; k < s.labels.size(); ++k) {
            if (kernel(0, k) != 0) os << " " << kernel(0, k) << "*tap" << s.labels[k].first << "@" << s.labels[k].second;
          }
          verdict.detail = os.str();
        }
        break;
      }
    }
    if (all) {
      verdict.block = n;
      return verdict;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Noncatastrophicity

NoncatastrophicVerdict check_noncatastrophic(const Encoder& e, const GroupShift& g, int trials, int horizon) {
  NoncatastrophicVerdict verdict;
  verdict.horizon = horizon;
  std::mt19937_64 rng(0x6e6f6e63);
  for (int t = 0; t < trials && !e.source.is_trivial(); ++t) {
    std::uniform_int_distribution<int> len_dist(1, 6);
    const int len = len_dist(rng);
    std::vector<GroupElement> symbols;
    for (int i = 0; i < len; ++i) {
      GroupElement s = e.source.zero();
      for (std::size_t c = 0; c < s.coords.size(); ++c) {
        s.coords[c] = std::uniform_int_distribution<std::int64_t>(0, e.source.factors()[c].order() - 1)(rng);
      }
      symbols.push_back(std::move(s));
    }
    const Word m(0, std::move(symbols), e.source.rank());
    const Word out = encode(e, m);
    if (!out.is_zero() && (out.first() < m.first() - static_cast<std::int64_t>(e.memory()) ||
                           out.last() > m.last() + static_cast<std::int64_t>(e.memory()))) {
      verdict.finite_to_finite = false;
    }
  }
  if (horizon < 1) return verdict;
  const SymbolEmbedding emb(g.alphabet);
  const WindowModule finite = finite_members(g, 0, horizon - 1, default_margin(g));
  const int pad = horizon + static_cast<int>(e.memory());
  for (const Word& w : finite.basis_words(emb)) {
    if (!finite_preimage(e, w, pad)) {
      verdict.finite_preimages = false;
      verdict.witness = w;
      break;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Base decomposition

Encoder lifted_encoder(const GroupShift& g, std::int64_t p, const CanonicalGeneratorSet& multiple_set, int pad) {
  Encoder e;
  std::vector<CyclicFactor> factors;
  for (const auto& entry : multiple_set.entries) {
    e.taps.push_back(lift_height(g, entry.y, p, 1, pad));
    factors.push_back({p, entry.height + 2});
  }
  e.source = FiniteAbelianGroup::from_factors(std::move(factors));
  e.target = g.alphabet;
  return e;
}

BaseDecomposition base_decompose(const GroupShift& g, std::int64_t p, const Word& u,
                                 const CanonicalGeneratorSet& multiple_set, int pad) {
  const FiniteAbelianGroup& h = g.alphabet;
  Encoder multiple_encoder = make_encoder(multiple_set);
  multiple_encoder.target = h;
  BaseDecomposition out;
  out.lifted = lifted_encoder(g, p, multiple_set, pad);

  const Word pu = multiply(h, p, u);
  const auto lambda = finite_preimage(multiple_encoder, pu, pad + static_cast<int>(u.support_length()));
  if (!lambda) throw SearchFailure("base_decompose: p*u has no finite preimage over the taps of pG");

  // Same integer coefficients, read in the larger cyclic groups of the lifts.
  std::vector<GroupElement> symbols = lambda->symbols();
  out.coefficients = lambda->is_zero() ? Word(out.lifted.source.rank())
                                       : Word(lambda->first(), std::move(symbols), out.lifted.source.rank());
  out.w = encode(out.lifted, out.coefficients);
  out.v = subtract(h, u, out.w);
  if (!multiply(h, p, out.v).is_zero()) throw SearchFailure("base_decompose: remainder is not p-torsion");
  return out;
}

}  // namespace gshift
