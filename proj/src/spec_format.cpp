#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

#include "gshift/cli_io.hpp"

namespace gshift {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::int64_t parse_int(const std::string& token, int line, const char* what) {
  const std::string t = trim(token);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    throw ParseError(line, std::string("expected integer ") + what + ", got '" + t + "'");
  }
  return v;
}

// One symbol per tuple "(a,b,...)" or bare integer (single-coordinate groups).
std::vector<std::vector<std::int64_t>> parse_symbols(const std::string& text, std::size_t arity, int line) {
  std::vector<std::vector<std::int64_t>> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::vector<std::int64_t> coords;
    if (text[i] == '(') {
      const auto close = text.find(')', i);
      if (close == std::string::npos) throw ParseError(line, "unterminated symbol tuple");
      std::stringstream ss(text.substr(i + 1, close - i - 1));
      std::string part;
      while (std::getline(ss, part, ',')) coords.push_back(parse_int(part, line, "coordinate"));
      i = close + 1;
    } else {
      auto end = i;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
      if (arity != 1) throw ParseError(line, "symbols must be tuples of " + std::to_string(arity) + " coordinates");
      coords.push_back(parse_int(text.substr(i, end - i), line, "coordinate"));
      i = end;
    }
    if (coords.size() != arity) {
      throw ParseError(line, "symbol has " + std::to_string(coords.size()) + " coordinates, expected " +
                                 std::to_string(arity));
    }
    out.push_back(std::move(coords));
  }
  return out;
}

Word parse_word(const FiniteAbelianGroup& h, std::int64_t first, const std::string& text, int line) {
  const auto raw = parse_symbols(text, h.input_orders().size(), line);
  if (raw.empty()) throw ParseError(line, "empty word");
  std::vector<GroupElement> symbols;
  for (const auto& c : raw) {
    try {
      symbols.push_back(h.from_input(c));
    } catch (const std::out_of_range& e) {
      throw ParseError(line, std::string("symbol out of range: ") + e.what());
    }
  }
  return Word(first, std::move(symbols), h.rank());
}

// "@<first>: <symbols>" after the keyword.
std::pair<std::int64_t, std::string> split_anchor(const std::string& rest, int line) {
  const std::string r = trim(rest);
  if (r.empty() || r[0] != '@') throw ParseError(line, "expected '@<first index>:'");
  const auto colon = r.find(':');
  if (colon == std::string::npos) throw ParseError(line, "missing ':' after first index");
  return {parse_int(r.substr(1, colon - 1), line, "first index"), r.substr(colon + 1)};
}

}  // namespace

const std::vector<std::string>& override_keys() {
  static const std::vector<std::string> keys = {"past", "search_cap", "memory_cap", "block_cap",
                                                "support_cap", "check_horizon", "trials", "memory"};
  return keys;
}

void apply_overrides(const std::map<std::string, int>& overrides, Horizons& hz) {
  for (const auto& [key, value] : overrides) {
    if (key == "past") hz.past_horizon = value;
    else if (key == "search_cap") hz.search_cap = value;
    else if (key == "memory_cap") hz.memory_cap = value;
    else if (key == "block_cap") hz.block_cap = value;
    else if (key == "support_cap") hz.support_cap = value;
    else if (key == "check_horizon") hz.check_horizon = value;
    else if (key == "trials") hz.trials = value;
  }
}

ShiftSpecFile parse_spec_file(const std::string& text) {
  ShiftSpecFile spec;
  bool have_group = false;
  struct Tap {
    std::int64_t order;
    Word word;
  };
  std::vector<Tap> taps;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string l = trim(raw.substr(0, raw.find('#')));
    if (l.empty()) continue;

    if (l.rfind("gen", 0) == 0 && (l.size() == 3 || std::isspace(static_cast<unsigned char>(l[3])) || l[3] == '@')) {
      if (!have_group) throw ParseError(line, "generator before group line");
      const auto [first, body] = split_anchor(l.substr(3), line);
      Word w = parse_word(spec.shift.alphabet, first, body, line);
      if (!w.is_zero()) spec.shift.generators.push_back(std::move(w));
      continue;
    }
    if (l.rfind("tap", 0) == 0 && l.size() > 3 && std::isspace(static_cast<unsigned char>(l[3]))) {
      if (!have_group) throw ParseError(line, "tap before group line");
      const std::string rest = trim(l.substr(3));
      const auto at = rest.find('@');
      if (at == std::string::npos) throw ParseError(line, "expected 'tap Z<q> @<first>: ...'");
      const std::string order_token = trim(rest.substr(0, at));
      if (order_token.size() < 2 || (order_token[0] != 'Z' && order_token[0] != 'z')) {
        throw ParseError(line, "expected source order 'Z<q>' before '@'");
      }
      const std::int64_t q = parse_int(order_token.substr(1), line, "source order");
      const auto f = q > 1 ? factorize(q) : std::vector<std::pair<std::int64_t, int>>{};
      if (f.size() != 1) throw ParseError(line, "tap source order must be a prime power");
      const auto [first, body] = split_anchor(rest.substr(at), line);
      taps.push_back({q, parse_word(spec.shift.alphabet, first, body, line)});
      continue;
    }

    const auto colon = l.find(':');
    if (colon == std::string::npos) throw ParseError(line, "unrecognized line '" + l + "'");
    const std::string key = trim(l.substr(0, colon));
    const std::string value = trim(l.substr(colon + 1));
    if (key == "group") {
      if (have_group) throw ParseError(line, "duplicate group line");
      try {
        spec.shift.alphabet = parse_group(value);
      } catch (const std::exception& e) {
        throw ParseError(line, std::string("bad group: ") + e.what());
      }
      have_group = true;
    } else if (std::find(override_keys().begin(), override_keys().end(), key) != override_keys().end()) {
      const std::int64_t v = parse_int(value, line, "value");
      if (v < 0 || v > 1'000'000) throw ParseError(line, "value for '" + key + "' out of range");
      spec.overrides[key] = static_cast<int>(v);
      if (key == "memory") spec.shift.declared_memory = static_cast<int>(v);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }
  if (!have_group) throw ParseError(0, "missing 'group:' line");

  if (!taps.empty()) {
    std::stable_sort(taps.begin(), taps.end(),
                     [](const Tap& a, const Tap& b) { return factorize(a.order)[0].first < factorize(b.order)[0].first; });
    Encoder e;
    std::vector<CyclicFactor> factors;
    for (auto& t : taps) {
      const auto [p, k] = factorize(t.order)[0];
      factors.push_back({p, k});
      e.taps.push_back(std::move(t.word));
    }
    e.source = FiniteAbelianGroup::from_factors(std::move(factors));
    e.target = spec.shift.alphabet;
    spec.encoder = std::move(e);
  }
  return spec;
}

GroupShift parse_spec(const std::string& text) { return parse_spec_file(text).shift; }

std::string format_symbol(const FiniteAbelianGroup& h, const GroupElement& s) {
  const auto coords = h.to_input(s);
  if (coords.size() == 1) return std::to_string(coords[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? "," : "") + std::to_string(coords[i]);
  return out + ")";
}

std::string format_word(const FiniteAbelianGroup& h, const Word& w) {
  std::string out = "@" + std::to_string(w.first()) + ":";
  if (w.is_zero()) return out + " " + format_symbol(h, h.zero());
  for (const auto& s : w.symbols()) out += " " + format_symbol(h, s);
  return out;
}

std::string print_spec(const ShiftSpecFile& spec) {
  std::ostringstream os;
  os << "group: " << spec.shift.alphabet.to_string() << "\n";
  for (const auto& g : spec.shift.generators) os << "gen " << format_word(spec.shift.alphabet, g) << "\n";
  if (spec.encoder) {
    for (std::size_t j = 0; j < spec.encoder->taps.size(); ++j) {
      os << "tap Z" << spec.encoder->source.factors()[j].order() << " "
         << format_word(spec.shift.alphabet, spec.encoder->taps[j]) << "\n";
    }
  }
  for (const auto& [key, value] : spec.overrides) os << key << ": " << value << "\n";
  return os.str();
}

Word parse_message(const std::string& text, const FiniteAbelianGroup& source) {
  std::map<std::int64_t, GroupElement> symbols;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string l = trim(raw.substr(0, raw.find('#')));
    if (l.empty()) continue;
    const auto colon = l.find(':');
    if (colon == std::string::npos) throw ParseError(line, "expected 'index: symbol'");
    const std::int64_t index = parse_int(l.substr(0, colon), line, "time index");
    const auto raw_symbols = parse_symbols(l.substr(colon + 1), source.input_orders().size(), line);
    if (raw_symbols.size() != 1) throw ParseError(line, "expected exactly one symbol");
    GroupElement s;
    try {
      s = source.from_input(raw_symbols[0]);
    } catch (const std::out_of_range& e) {
      throw ParseError(line, std::string("message symbol out of range: ") + e.what());
    }
    if (!symbols.emplace(index, std::move(s)).second) {
      throw ParseError(line, "duplicate time index " + std::to_string(index));
    }
  }
  if (symbols.empty()) return Word(source.rank());
  const std::int64_t first = symbols.begin()->first;
  std::vector<GroupElement> seq;
  for (std::int64_t n = first; n <= symbols.rbegin()->first; ++n) {
    auto it = symbols.find(n);
    seq.push_back(it == symbols.end() ? source.zero() : it->second);
  }
  return Word(first, std::move(seq), source.rank());
}

}  // namespace gshift
