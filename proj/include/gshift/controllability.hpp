#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gshift/shift_space.hpp"

namespace gshift {

enum class SteeringKind {
  /// g1 = g on [-L, 0] and g1 = 0 on [n + 1, n + L].
  plain,
  /// additionally order(g1|[1, n]) divides order(g|[1, n]).
  order_dividing,
};

/// Past horizon used for candidate n when the caller passes L = 0.
int default_past_horizon(const GroupShift& g, int n);

/// Window-scale steering condition at candidate n over [-L, n + L]. When it
/// fails and `counterexample` is non-null, stores a window element g that
/// cannot be steered.
bool steering_holds(const GroupShift& g, int n, int past_horizon, SteeringKind kind,
                    Word* counterexample = nullptr);

/// Outcome of the search for a least steering index.
struct IndexSearch {
  std::optional<int> index;
  int cap = 0;
  /// Past horizon at the reported index (or at the cap when none was found);
  /// 0 in the request means the per-n default was used.
  int past_horizon = 0;
  /// holds[n] for every searched n.
  std::vector<bool> holds;
  std::optional<Word> counterexample;
  int counterexample_n = -1;
  /// True when every n past the first success also satisfied the condition.
  bool monotone = true;
};

/// Least n <= cap satisfying the plain steering condition (n_c).
IndexSearch controllability_index(const GroupShift& g, int past_horizon, int cap);

/// Least n <= cap satisfying the order-dividing condition (n_o), checked on
/// every primary component.
IndexSearch order_controllability_index(const GroupShift& g, int past_horizon, int cap);

enum class DerivedShift { itself, socle, multiple, quotient };

struct WeakControllability {
  bool holds = true;
  int horizon = 0;
  /// Human-readable notes: the windows checked, or the failing window.
  std::vector<std::string> witnesses;
  std::optional<Word> counterexample;
};

/// Density of finite-support members in the derived shift. Shifts presented
/// by generators (G, pG, G/pG) pass by construction; the socle G[p] is
/// compared window by window against its finite-support members.
WeakControllability weak_controllability_check(const GroupShift& g, DerivedShift derived, std::int64_t p,
                                               int horizon);

struct ControllabilityReport {
  WeakControllability weak;
  IndexSearch controllability;
  IndexSearch order_controllability;
  int search_cap = 0;
};

ControllabilityReport analyze_controllability(const GroupShift& g, int past_horizon, int cap, int horizon);

}  // namespace gshift
