#include <algorithm>
#include <deque>
#include <unordered_set>

#include "gshift/cli_io.hpp"

namespace gshift {

namespace {

// Digits of a window in input coordinates, position-major.
std::vector<std::int64_t> window_digits(const FiniteAbelianGroup& h, const Word& w, int length) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < length; ++i) {
    const auto c = h.to_input(w.is_zero() ? h.zero() : w.at(i));
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

std::vector<std::int64_t> radices(const FiniteAbelianGroup& h, int length) {
  std::vector<std::int64_t> out;
  for (int i = 0; i < length; ++i) out.insert(out.end(), h.input_orders().begin(), h.input_orders().end());
  return out;
}

std::uint64_t pack(const std::vector<std::int64_t>& digits, const std::vector<std::int64_t>& radix) {
  std::uint64_t code = 0;
  for (std::size_t k = digits.size(); k-- > 0;) code = code * static_cast<std::uint64_t>(radix[k]) + digits[k];
  return code;
}

std::vector<std::int64_t> unpack(std::uint64_t code, const std::vector<std::int64_t>& radix) {
  std::vector<std::int64_t> out(radix.size());
  for (std::size_t k = 0; k < radix.size(); ++k) {
    out[k] = static_cast<std::int64_t>(code % radix[k]);
    code /= radix[k];
  }
  return out;
}

}  // namespace

std::uint64_t pack_window(const FiniteAbelianGroup& h, const Word& w, int length) {
  return pack(window_digits(h, w, length), radices(h, length));
}

std::optional<std::vector<std::uint64_t>> oracle_window(const GroupShift& g, int length, std::size_t cap) {
  if (length < 1) throw std::invalid_argument("oracle_window: length must be positive");
  const FiniteAbelianGroup& h = g.alphabet;
  std::size_t full = 1;
  for (int i = 0; i < length; ++i) {
    if (full > cap / static_cast<std::size_t>(h.order())) return std::nullopt;
    full *= static_cast<std::size_t>(h.order());
  }
  const auto radix = radices(h, length);

  std::vector<std::vector<std::int64_t>> gens;
  for (const auto& w : g.generators) {
    for (std::int64_t n = -w.last(); n <= length - 1 - w.first(); ++n) {
      gens.push_back(window_digits(h, restrict_to(shift(w, -n), 0, length - 1), length));
    }
  }

  std::unordered_set<std::uint64_t> seen{0};
  std::deque<std::uint64_t> queue{0};
  while (!queue.empty()) {
    const auto digits = unpack(queue.front(), radix);
    queue.pop_front();
    for (const auto& gen : gens) {
      std::vector<std::int64_t> sum(digits.size());
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] = (digits[k] + gen[k]) % radix[k];
      const std::uint64_t code = pack(sum, radix);
      if (seen.insert(code).second) queue.push_back(code);
    }
  }
  std::vector<std::uint64_t> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::uint64_t> module_codes(const FiniteAbelianGroup& h, const WindowModule& m) {
  const SymbolEmbedding emb(h);
  const std::size_t d = emb.rank();
  const auto modulus = static_cast<std::uint64_t>(emb.modulus());

  // Packed input code of every symbol, indexed by its embedded coordinates
  // read as base-M digits.
  std::size_t table_size = 1;
  for (std::size_t k = 0; k < d; ++k) {
    table_size *= modulus;
    if (table_size > (std::size_t{1} << 22)) {
      std::vector<std::uint64_t> out;
      for_each_module_element(m.form, [&](const std::vector<Residue>& v) {
        out.push_back(pack_window(h, shift(emb.word_from_window(v, m.a), m.a), static_cast<int>(m.length())));
      });
      std::sort(out.begin(), out.end());
      return out;
    }
  }
  std::vector<std::uint64_t> symbol_code(table_size, 0);
  const auto input_radix = radices(h, 1);
  for (std::uint64_t code = 0; code < static_cast<std::uint64_t>(h.order()); ++code) {
    const Word w(0, {h.from_input(unpack(code, input_radix))}, h.rank());
    const auto v = emb.window_vector(w, 0, 0);
    std::size_t index = 0;
    for (std::size_t k = d; k-- > 0;) index = index * modulus + static_cast<std::size_t>(v[k]);
    symbol_code[index] = code;
  }

  const auto order = static_cast<std::uint64_t>(h.order());
  const std::size_t length = m.length();
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(m.size()));
  for_each_module_element(m.form, [&](const std::vector<Residue>& v) {
    std::uint64_t code = 0;
    for (std::size_t pos = length; pos-- > 0;) {
      std::size_t index = 0;
      for (std::size_t k = d; k-- > 0;) index = index * modulus + static_cast<std::size_t>(v[pos * d + k]);
      code = code * order + symbol_code[index];
    }
    out.push_back(code);
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t digest_codes(const std::vector<std::uint64_t>& codes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (std::uint64_t c : codes) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (c >> (8 * byte)) & 0xff;
      hash *= 1099511628211ull;
    }
  }
  return hash;
}

}  // namespace gshift
