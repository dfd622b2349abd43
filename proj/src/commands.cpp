#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "gshift/cli_io.hpp"

namespace gshift {

namespace {

constexpr const char* kScope =
    "window-scale verdicts; every property is checked only on the windows, horizons and caps listed";

struct Options {
  std::string spec_path;
  std::string message_path;
  std::optional<int> past, search_cap, memory_cap, block_cap, support_cap, check_horizon, trials, window;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string pass_fail(bool b) { return b ? "pass" : "fail"; }
std::string opt_int(const std::optional<int>& v, const std::string& none) {
  return v ? std::to_string(*v) : none;
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

Horizons resolve_horizons(const ShiftSpecFile& spec, const Options& o) {
  Horizons hz;
  apply_overrides(spec.overrides, hz);
  if (o.past) hz.past_horizon = *o.past;
  if (o.search_cap) hz.search_cap = *o.search_cap;
  if (o.memory_cap) hz.memory_cap = *o.memory_cap;
  if (o.block_cap) hz.block_cap = *o.block_cap;
  if (o.support_cap) hz.support_cap = *o.support_cap;
  if (o.check_horizon) hz.check_horizon = *o.check_horizon;
  if (o.trials) hz.trials = *o.trials;
  if (hz.memory_cap < 1 || hz.check_horizon < 1) throw UsageError("memory_cap and check_horizon must be positive");
  return hz;
}

void emit_header(std::ostream& out, const std::string& command, const ShiftSpecFile& spec, const Horizons& hz) {
  const auto& h = spec.shift.alphabet;
  out << "command: " << command << "\n";
  out << "input.group: " << h.to_string() << "\n";
  for (std::size_t i = 0; i < spec.shift.generators.size(); ++i) {
    out << "input.generator[" << i << "]: " << format_word(h, spec.shift.generators[i]) << "\n";
  }
  if (spec.encoder) {
    for (std::size_t j = 0; j < spec.encoder->taps.size(); ++j) {
      out << "input.tap[" << j << "]: Z" << spec.encoder->source.factors()[j].order() << " "
          << format_word(h, spec.encoder->taps[j]) << "\n";
    }
  }
  out << "input.memory: " << opt_int(spec.shift.declared_memory, "undeclared") << "\n";
  out << "horizons.past: " << (hz.past_horizon > 0 ? std::to_string(hz.past_horizon) : "auto") << "\n";
  out << "horizons.search_cap: " << hz.search_cap << "\n";
  out << "horizons.memory_cap: " << hz.memory_cap << "\n";
  out << "horizons.block_cap: " << hz.block_cap << "\n";
  out << "horizons.support_cap: " << (hz.support_cap > 0 ? std::to_string(hz.support_cap) : "auto") << "\n";
  out << "horizons.check_horizon: " << hz.check_horizon << "\n";
  out << "horizons.trials: " << hz.trials << "\n";
  out << "scope: " << kScope << "\n";
}

void emit_index(std::ostream& out, const std::string& key, const IndexSearch& s, const FiniteAbelianGroup& h) {
  out << key << ".index: " << opt_int(s.index, "none") << "\n";
  out << key << ".searched: 0.." << (s.holds.empty() ? 0 : s.holds.size() - 1) << "\n";
  out << key << ".past_horizon: " << s.past_horizon << "\n";
  out << key << ".monotone: " << yes_no(s.monotone) << "\n";
  if (s.counterexample) {
    out << key << ".counterexample_n: " << s.counterexample_n << "\n";
    out << key << ".counterexample: " << format_word(h, *s.counterexample) << "\n";
  }
}

void emit_encoder(std::ostream& out, const Encoder& e) {
  out << "encoder.source: " << e.source.to_string() << "\n";
  for (std::size_t j = 0; j < e.taps.size(); ++j) {
    out << "encoder.tap[" << j << "]: Z" << e.source.factors()[j].order() << " " << format_word(e.target, e.taps[j])
        << "\n";
  }
  out << "encoder.memory: " << e.memory() << "\n";
}

void emit_windows(std::ostream& out, const std::string& key, int horizon,
                  std::size_t cap, const std::function<std::optional<std::vector<std::uint64_t>>(int)>& codes) {
  for (int len = 1; len <= horizon; ++len) {
    const auto c = codes(len);
    out << key << "[" << len << "]: ";
    if (!c) {
      out << "skipped (more than " << cap << " candidate words)\n";
      continue;
    }
    out << "size=" << c->size() << " digest=" << hex(digest_codes(*c)) << "\n";
  }
}

bool window_fits(const FiniteAbelianGroup& h, int len, std::size_t cap) {
  std::size_t full = 1;
  for (int i = 0; i < len; ++i) {
    if (full > cap / static_cast<std::size_t>(h.order())) return false;
    full *= static_cast<std::size_t>(h.order());
  }
  return true;
}

void emit_image_windows(std::ostream& out, const Encoder& e, int horizon, std::size_t cap) {
  emit_windows(out, "window", horizon, cap, [&](int len) -> std::optional<std::vector<std::uint64_t>> {
    if (!window_fits(e.target, len, cap)) return std::nullopt;
    return module_codes(e.target, encoder_image(e, 0, len - 1));
  });
}

void emit_checks(std::ostream& out, const std::string& prefix, const std::vector<CheckOutcome>& checks) {
  for (const auto& c : checks) out << prefix << c.name << ": " << pass_fail(c.passed) << " (" << c.detail << ")\n";
}

// ---------------------------------------------------------------------------

int cmd_analyze(std::ostream& out, const ShiftSpecFile& spec, const Horizons& hz) {
  const GroupShift& g = spec.shift;
  const auto memory = g.declared_memory ? g.declared_memory : finite_type_memory(g, hz.memory_cap);
  out << "finite_type.memory: " << opt_int(memory, "none") << "\n";
  out << "finite_type.source: " << (g.declared_memory ? "declared" : "splice search") << "\n";
  GroupShift work = g;
  work.declared_memory = memory;
  const ControllabilityReport r = analyze_controllability(work, hz.past_horizon, hz.search_cap, hz.check_horizon);
  emit_index(out, "controllability", r.controllability, g.alphabet);
  emit_index(out, "order_controllability", r.order_controllability, g.alphabet);
  const bool indices_consistent = !r.controllability.index || !r.order_controllability.index ||
                                  *r.controllability.index <= *r.order_controllability.index;
  out << "indices_consistent: " << yes_no(indices_consistent) << "\n";
  const bool ok = memory && r.controllability.index && r.order_controllability.index &&
                  r.controllability.monotone && r.order_controllability.monotone && indices_consistent;
  out << "verdict: " << pass_fail(ok) << "\n";
  return ok ? 0 : 1;
}

void emit_generator_set(std::ostream& out, const std::string& key, const FiniteAbelianGroup& h,
                        const CanonicalGeneratorSet& set) {
  const PrimaryComponent pc = primary_component(h, set.prime);
  out << key << ".size: " << set.size() << "\n";
  for (std::size_t j = 0; j < set.entries.size(); ++j) {
    const auto& e = set.entries[j];
    const std::string k = key + ".entry[" + std::to_string(j) + "]";
    out << k << ".height: " << e.height << "\n";
    out << k << ".x: " << format_word(h, embed_word(pc, e.x, h.rank())) << "\n";
    out << k << ".y: " << format_word(h, embed_word(pc, e.y, h.rank())) << "\n";
  }
  out << key << ".independence_block: " << opt_int(set.independence_block, "none") << "\n";
}

int cmd_generators(std::ostream& out, const ShiftSpecFile& spec, const Horizons& hz) {
  const GroupShift& g = spec.shift;
  bool ok = true;
  for (std::int64_t p : g.alphabet.primes()) {
    const std::string key = "prime[" + std::to_string(p) + "]";
    try {
      emit_generator_set(out, key, g.alphabet, canonical_generators(g, p, hz));
    } catch (const NotOrderControllable& e) {
      ok = false;
      out << key << ".status: " << e.what() << "\n";
      emit_index(out, key + ".order_controllability", e.search(), primary_component(g.alphabet, p).group);
    } catch (const SearchFailure& e) {
      ok = false;
      out << key << ".status: " << e.what() << "\n";
    }
  }
  out << "verdict: " << pass_fail(ok) << "\n";
  return ok ? 0 : 1;
}

std::vector<CheckOutcome> user_encoder_checks(const Encoder& e, const GroupShift& g, const Horizons& hz,
                                              std::ostream& out) {
  std::vector<CheckOutcome> checks;
  bool orders = true;
  for (std::size_t j = 0; j < e.taps.size(); ++j) {
    orders = orders && e.source.factors()[j].order() % std::max<std::int64_t>(word_order(e.target, e.taps[j]), 1) == 0;
  }
  checks.push_back({"order_bound", orders, "tap orders divide source orders"});
  bool onto = true;
  std::string where;
  for (int len = 1; len <= hz.check_horizon && onto; ++len) {
    if (encoder_image(e, 0, len - 1).form != window_projection(g, 0, len - 1).form) {
      onto = false;
      where = "image differs on window [0, " + std::to_string(len - 1) + "]";
    }
  }
  checks.push_back({"surjectivity", onto, onto ? "windows [0, 0] .. [0, " + std::to_string(hz.check_horizon - 1) + "]" : where});
  const InjectivityVerdict inj = check_injectivity(e, hz.block_cap);
  checks.push_back({"injectivity", inj.block.has_value(),
                    inj.block ? "block [0, " + std::to_string(*inj.block) + "]" : inj.detail});
  const NoncatastrophicVerdict nc = check_noncatastrophic(e, g, hz.trials, hz.check_horizon);
  checks.push_back({"noncatastrophic", nc.finite_to_finite && nc.finite_preimages,
                    "finite members on [0, " + std::to_string(hz.check_horizon - 1) + "]"});
  if (nc.witness) {
    out << "noncatastrophic.witness: " << format_word(g.alphabet, *nc.witness) << "\n";
    out << "noncatastrophic.witness_note: finite member of G with no finite preimage within padding "
        << hz.check_horizon + static_cast<int>(e.memory()) << "\n";
  }
  return checks;
}

int cmd_certify(std::ostream& out, const ShiftSpecFile& spec, const Horizons& hz, int window) {
  const GroupShift& g = spec.shift;
  const FiniteAbelianGroup& h = g.alphabet;
  if (spec.encoder) {
    emit_encoder(out, *spec.encoder);
    const auto checks = user_encoder_checks(*spec.encoder, g, hz, out);
    emit_checks(out, "check.", checks);
    emit_image_windows(out, *spec.encoder, window, hz.enumeration_cap);
    bool ok = true;
    for (const auto& c : checks) ok = ok && c.passed;
    out << "verdict: " << (ok ? "complete" : "incomplete") << "\n";
    return ok ? 0 : 1;
  }

  const ConjugacyCertificate cert = conjugacy_certificate(g, hz);
  for (const auto& pc : cert.primaries) {
    const PrimaryComponent comp = primary_component(h, pc.prime);
    const std::string key = "prime[" + std::to_string(pc.prime) + "]";
    out << key << ".memory: " << opt_int(pc.memory, "none") << "\n";
    emit_index(out, key + ".controllability", pc.controllability, comp.group);
    emit_index(out, key + ".order_controllability", pc.order_controllability, comp.group);
    out << key << ".socle_density: " << (pc.socle_density.holds ? "holds" : "fails");
    for (const auto& w : pc.socle_density.witnesses) out << " (" << w << ")";
    out << "\n";
    if (pc.generators) emit_generator_set(out, key, h, *pc.generators);
    emit_checks(out, key + ".check.", pc.checks);
    out << key << ".status: " << (pc.complete() ? "complete" : "failed at " + pc.failed_stage) << "\n";
  }
  if (cert.encoder) {
    emit_encoder(out, *cert.encoder);
    emit_checks(out, "check.", cert.checks);
    emit_image_windows(out, *cert.encoder, window, hz.enumeration_cap);
  }
  out << "verdict: " << (cert.complete() ? "complete" : "incomplete (" + cert.failed_stage + ")") << "\n";
  return cert.complete() ? 0 : 1;
}

int cmd_encode(std::ostream& out, const ShiftSpecFile& spec, const Horizons& hz, const std::string& message_text) {
  std::optional<Encoder> e = spec.encoder;
  if (!e) {
    const ConjugacyCertificate cert = conjugacy_certificate(spec.shift, hz);
    if (!cert.complete()) {
      out << "verdict: no encoder (" << cert.failed_stage << ")\n";
      return 1;
    }
    e = cert.encoder;
  }
  emit_encoder(out, *e);
  const Word message = parse_message(message_text, e->source);
  out << "message: " << format_word(e->source, message) << "\n";
  out << "output: " << format_word(e->target, encode(*e, message)) << "\n";
  return 0;
}

int cmd_oracle(std::ostream& out, const ShiftSpecFile& spec, const Horizons& hz, int window) {
  emit_windows(out, "window", window, hz.enumeration_cap,
               [&](int len) { return oracle_window(spec.shift, len, hz.enumeration_cap); });
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group shift analysis: controllability, canonical generators and encoder certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--past", o.past, "Past horizon L for steering checks (default 2*(span+n))")->check(CLI::NonNegativeNumber);
  app.add_option("--search-cap", o.search_cap, "Largest index tried for n_c and n_o (default 16)")->check(CLI::NonNegativeNumber);
  app.add_option("--memory-cap", o.memory_cap, "Largest finite-type memory tried (default 16)")->check(CLI::PositiveNumber);
  app.add_option("--block-cap", o.block_cap, "Largest independence block tried (default 16)")->check(CLI::NonNegativeNumber);
  app.add_option("--support-cap", o.support_cap, "Longest candidate generator (default n_o+span+1)")->check(CLI::NonNegativeNumber);
  app.add_option("--check-horizon", o.check_horizon, "Window length for image checks (default 8)")->check(CLI::PositiveNumber);
  app.add_option("--trials", o.trials, "Random messages per algebraic check (default 64)")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", o.timing, "Append wall-clock timing (makes output nondeterministic)");

  auto* analyze = app.add_subcommand("analyze", "Finite type, controllability and order-controllability indices");
  auto* generators = app.add_subcommand("generators", "Canonical generating set for each prime");
  auto* encode_cmd = app.add_subcommand("encode", "Apply the encoder to a message file");
  auto* certify = app.add_subcommand("certify", "Full conjugacy certificate");
  auto* oracle = app.add_subcommand("oracle", "Brute-force window projections for cross-checks");
  for (auto* sub : {analyze, generators, encode_cmd, certify, oracle}) {
    sub->add_option("spec", o.spec_path, "Shift description file")->required();
  }
  encode_cmd->add_option("message", o.message_path, "Message file, one 'index: symbol' per line")->required();
  for (auto* sub : {certify, oracle}) {
    sub->add_option("--window", o.window, "Longest window to enumerate (default check horizon)")->check(CLI::PositiveNumber);
  }

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = 0;
  try {
    const ShiftSpecFile spec = parse_spec_file(read_file(o.spec_path));
    const Horizons hz = resolve_horizons(spec, o);
    const int window = o.window.value_or(hz.check_horizon);
    std::ostringstream report;
    const std::string name = app.get_subcommands().front()->get_name();
    emit_header(report, name, spec, hz);
    if (name == "analyze") code = cmd_analyze(report, spec, hz);
    else if (name == "generators") code = cmd_generators(report, spec, hz);
    else if (name == "encode") code = cmd_encode(report, spec, hz, read_file(o.message_path));
    else if (name == "certify") code = cmd_certify(report, spec, hz, window);
    else code = cmd_oracle(report, spec, hz, window);
    out << report.str();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  if (o.timing) {
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    out << "timing.ms: " << std::fixed << std::setprecision(1) << ms << "\n";
  }
  return code;
}

}  // namespace gshift
