#include "gshift/controllability.hpp"

#include <algorithm>

namespace gshift {

namespace {

// Columns [from | to] of two column blocks, the second scaled by `factor`.
ResidueMatrix stacked_constraints(const ResidueMatrix& rows, const std::vector<std::size_t>& plain_cols,
                                  const std::vector<std::size_t>& scaled_cols, Residue factor) {
  ResidueMatrix out(rows.modulus(), rows.rows(), plain_cols.size() + scaled_cols.size());
  for (std::size_t r = 0; r < rows.rows(); ++r) {
    for (std::size_t k = 0; k < plain_cols.size(); ++k) out.set(r, k, rows(r, plain_cols[k]));
    for (std::size_t k = 0; k < scaled_cols.size(); ++k) {
      out.set(r, plain_cols.size() + k, rows(r, scaled_cols[k]) * factor);
    }
  }
  return out;
}

// Every past projection of `sources` must be a past projection of `targets`.
std::optional<std::size_t> first_unsteerable(const ResidueMatrix& sources, const ResidueMatrix& targets,
                                             const std::vector<std::size_t>& past) {
  const CanonicalRowForm reachable = howell_form(select_columns(targets, past));
  const ResidueMatrix wanted = select_columns(sources, past);
  for (std::size_t r = 0; r < wanted.rows(); ++r) {
    if (!reachable.contains(wanted.row(r))) return r;
  }
  return std::nullopt;
}

struct SteeringWindow {
  SymbolEmbedding emb;
  WindowModule module;
  std::vector<std::size_t> past, middle, future;
};

SteeringWindow steering_window(const GroupShift& g, int n, int past_horizon) {
  const SymbolEmbedding emb(g.alphabet);
  const std::int64_t lo = -past_horizon, hi = n + past_horizon;
  SteeringWindow sw{emb, window_projection(g, lo, hi), {}, {}, {}};
  sw.past = position_columns(lo, emb.rank(), lo, 0);
  sw.middle = position_columns(lo, emb.rank(), 1, n);
  sw.future = position_columns(lo, emb.rank(), n + 1, hi);
  return sw;
}

bool plain_steering(const GroupShift& g, int n, int past_horizon, Word* counterexample) {
  const SteeringWindow sw = steering_window(g, n, past_horizon);
  const ResidueMatrix& rows = sw.module.form.matrix;
  const ResidueMatrix steered = vanishing_submodule(rows, sw.future);
  if (auto bad = first_unsteerable(rows, steered, sw.past)) {
    if (counterexample) *counterexample = sw.emb.word_from_window(rows.row(*bad), -past_horizon);
    return false;
  }
  return true;
}

// Order-dividing steering on a p-group shift: for each t the elements with
// p^t * g|[1,n] = 0 must be steerable by g1 with p^t * g1|[1,n] = 0.
bool primary_order_steering(const GroupShift& gp, std::int64_t p, int n, int past_horizon, Word* counterexample) {
  const SteeringWindow sw = steering_window(gp, n, past_horizon);
  const ResidueMatrix& rows = sw.module.form.matrix;
  const int e = valuation(sw.emb.modulus(), p);
  for (int t = 0; t <= e; ++t) {
    const Residue pt = ipow(p, t);
    const ResidueMatrix sources =
        combine_rows(left_kernel(stacked_constraints(rows, {}, sw.middle, pt)), rows);
    const ResidueMatrix targets =
        combine_rows(left_kernel(stacked_constraints(rows, sw.future, sw.middle, pt)), rows);
    if (auto bad = first_unsteerable(sources, targets, sw.past)) {
      if (counterexample) *counterexample = sw.emb.word_from_window(sources.row(*bad), -past_horizon);
      return false;
    }
  }
  return true;
}

IndexSearch search_index(const GroupShift& g, int past_horizon, int cap, SteeringKind kind) {
  if (cap < 0) throw std::invalid_argument("index search: negative cap");
  if (past_horizon < 0) throw std::invalid_argument("index search: negative past horizon");
  IndexSearch out;
  out.cap = cap;
  // Probe a couple of indices past the first success to confirm monotonicity.
  constexpr int kMonotoneProbe = 2;
  for (int n = 0; n <= cap; ++n) {
    const int l = past_horizon > 0 ? past_horizon : default_past_horizon(g, n);
    Word witness;
    const bool ok = steering_holds(g, n, l, kind, &witness);
    out.holds.push_back(ok);
    if (!out.index) {
      out.past_horizon = l;
      if (ok) {
        out.index = n;
      } else {
        out.counterexample = witness;
        out.counterexample_n = n;
      }
    } else if (!ok) {
      out.monotone = false;
    }
    if (out.index && n >= *out.index + kMonotoneProbe) break;
  }
  if (out.index) {
    out.counterexample.reset();
    out.counterexample_n = -1;
  }
  return out;
}

}  // namespace

int default_past_horizon(const GroupShift& g, int n) {
  return std::max(1, 2 * (static_cast<int>(g.span()) + n));
}

bool steering_holds(const GroupShift& g, int n, int past_horizon, SteeringKind kind, Word* counterexample) {
  if (past_horizon < 1) throw std::invalid_argument("steering_holds: past horizon must be positive");
  if (n < 0) throw std::invalid_argument("steering_holds: negative index");
  if (kind == SteeringKind::plain) return plain_steering(g, n, past_horizon, counterexample);
  for (std::int64_t p : g.alphabet.primes()) {
    const PrimaryComponent pc = primary_component(g.alphabet, p);
    Word local;
    if (!primary_order_steering(primary_shift(g, p), p, n, past_horizon, &local)) {
      if (counterexample) *counterexample = embed_word(pc, local, g.alphabet.rank());
      return false;
    }
  }
  return true;
}

IndexSearch controllability_index(const GroupShift& g, int past_horizon, int cap) {
  return search_index(g, past_horizon, cap, SteeringKind::plain);
}

IndexSearch order_controllability_index(const GroupShift& g, int past_horizon, int cap) {
  return search_index(g, past_horizon, cap, SteeringKind::order_dividing);
}

WeakControllability weak_controllability_check(const GroupShift& g, DerivedShift derived, std::int64_t p,
                                               int horizon) {
  if (horizon < 1) throw std::invalid_argument("weak_controllability_check: horizon must be positive");
  WeakControllability out;
  out.horizon = horizon;
  if (derived != DerivedShift::socle) {
    out.witnesses.push_back("finite-support generators are dense by presentation");
    return out;
  }
  const PrimaryComponent pc = primary_component(g.alphabet, p);
  const GroupShift gp = primary_shift(g, p);
  const SymbolEmbedding emb(gp.alphabet);
  const int margin = default_margin(gp);
  for (int len = 1; len <= horizon; ++len) {
    const std::int64_t a = 0, b = len - 1;
    const std::int64_t lo = a - margin, hi = b + margin;
    const auto inner = position_columns(lo, emb.rank(), a, b);

    const ResidueMatrix wide = window_projection(gp, lo, hi).form.matrix;
    const ResidueMatrix torsion = combine_rows(left_kernel(scale(wide, p)), wide);

    const WindowModule finite = finite_members(gp, lo - margin, hi + margin, margin);
    const auto finite_inner = position_columns(lo - margin, emb.rank(), a, b);
    const ResidueMatrix finite_socle = combine_rows(left_kernel(scale(finite.form.matrix, p)), finite.form.matrix);

    const ResidueMatrix want = select_columns(torsion, inner);
    const CanonicalRowForm have = howell_form(select_columns(finite_socle, finite_inner));
    for (std::size_t r = 0; r < want.rows(); ++r) {
      if (!have.contains(want.row(r))) {
        out.holds = false;
        out.counterexample = embed_word(pc, emb.word_from_window(want.row(r), a), g.alphabet.rank());
        out.witnesses.push_back("window [0, " + std::to_string(b) + "]: torsion element not realized");
        return out;
      }
    }
  }
  out.witnesses.push_back("windows [0, 0] .. [0, " + std::to_string(horizon - 1) + "] realized");
  return out;
}

ControllabilityReport analyze_controllability(const GroupShift& g, int past_horizon, int cap, int horizon) {
  ControllabilityReport r;
  r.search_cap = cap;
  r.weak = weak_controllability_check(g, DerivedShift::itself, 0, horizon);
  r.controllability = controllability_index(g, past_horizon, cap);
  r.order_controllability = order_controllability_index(g, past_horizon, cap);
  return r;
}

}  // namespace gshift
