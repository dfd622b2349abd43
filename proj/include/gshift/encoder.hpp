#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gshift/controllability.hpp"
#include "gshift/shift_space.hpp"

namespace gshift {

/// Search horizons and caps for the encoder pipeline. Every verdict is
/// relative to these values, and reports print them.
struct Horizons {
  int past_horizon = 0;  ///< L for steering checks; 0 means 2 * (span + n)
  int search_cap = 16;   ///< largest n tried for n_c and n_o
  int memory_cap = 16;   ///< largest finite-type block length tried
  int block_cap = 16;    ///< largest independence block [0, N] tried
  int support_cap = 0;   ///< longest candidate generator; 0 means n_o + span + 1
  int check_horizon = 8; ///< windows [0, k), k <= check_horizon, for image checks
  int trials = 64;       ///< random messages per algebraic check
  std::size_t enumeration_cap = std::size_t{1} << 20;
};

/// One entry of a canonical generating set: x = p^height * y, x p-torsion.
struct CanonicalEntry {
  Word x;
  int height = 0;
  Word y;
};

/// Socle generators with maximal heights (non-increasing) and their lifts,
/// over the p-primary alphabet of the shift.
struct CanonicalGeneratorSet {
  std::int64_t prime = 2;
  FiniteAbelianGroup alphabet;
  std::vector<CanonicalEntry> entries;
  std::optional<int> independence_block;

  std::size_t size() const { return entries.size(); }
};

/// Sliding homomorphism Phi(lambda)(i) = sum_{n,j} lambda_{j,n} y_j(i - n)
/// from source^Z to target^Z; source factor j is the cyclic group of tap j.
struct Encoder {
  FiniteAbelianGroup source;
  FiniteAbelianGroup target;
  std::vector<Word> taps;

  /// Longest tap support.
  std::size_t memory() const;
};

Encoder make_encoder(const CanonicalGeneratorSet& set);

/// Output of the encoder on [a, b]. Throws std::invalid_argument when a message
/// symbol is outside the source alphabet.
Word encode(const Encoder& e, const Word& message, std::int64_t a, std::int64_t b);
/// Whole (finite) output.
Word encode(const Encoder& e, const Word& message);

/// Span of the encoder output restricted to [a, b] over all messages.
WindowModule encoder_image(const Encoder& e, std::int64_t a, std::int64_t b);

/// Finite message m with encode(m) == w, searched with taps placed up to
/// `pad` positions beyond the support of w.
std::optional<Word> finite_preimage(const Encoder& e, const Word& w, int pad);

// ---------------------------------------------------------------------------
// Derived shifts

/// Presentation of G[p] by finite-support socle words found in windows of
/// length up to `horizon`. Throws SearchFailure when those words do not
/// reproduce the torsion of G's window projections.
GroupShift socle_shift(const GroupShift& g, std::int64_t p, int horizon);

/// p^r G, presented by p^r times the generators of G.
GroupShift multiple_shift(const GroupShift& g, std::int64_t p, int r);

/// H / pH for the p-part of H: one Z/p per p-primary factor.
FiniteAbelianGroup quotient_alphabet(const FiniteAbelianGroup& h, std::int64_t p);
/// Reduction of a word modulo pH.
Word quotient_word(const FiniteAbelianGroup& h, std::int64_t p, const Word& w);
GroupShift quotient_shift(const GroupShift& g, std::int64_t p);

/// Window modules of p^r G_f and of (p^r G)_f on [a, b] (finite-support
/// members only). Both are returned so the caller can compare them.
struct MultipleFiniteParts {
  WindowModule scaled_finite;   ///< p^r * (G_f words), restricted to [a, b]
  WindowModule derived_finite;  ///< finite words of p^r G supported in [a, b]
  bool equal() const;
};
MultipleFiniteParts multiple_finite_parts(const GroupShift& g, std::int64_t p, int r, std::int64_t a,
                                          std::int64_t b, int margin);

// ---------------------------------------------------------------------------
// Canonical generators

/// y in G_f with p^h y == x, searched in windows extending supp(x) by at
/// most `pad_cap` positions. Throws SearchFailure when none exists.
Word lift_height(const GroupShift& g, const Word& x, std::int64_t p, int h, int pad_cap);

/// Largest h <= exponent with a finite p^h-preimage of x (x nonzero).
int height_in_shift(const GroupShift& g, const Word& x, std::int64_t p, int pad_cap);

/// Raised when canonical generators are requested for a shift that is not order
/// controllable at the searched scale).
class NotOrderControllable : public std::runtime_error {
 public:
  NotOrderControllable(const std::string& what, IndexSearch search)
      : std::runtime_error(what), search_(std::move(search)) {}
  const IndexSearch& search() const { return search_; }

 private:
  IndexSearch search_;
};

/// Canonical generating set of a p-group shift, built by induction on the
/// exponent: the set for pG is lifted by one power of p and completed with
/// height-0 socle words of minimal quotient support.
CanonicalGeneratorSet canonical_generators(const GroupShift& g, std::int64_t p, const Horizons& hz);

// ---------------------------------------------------------------------------
// Verdicts

struct InjectivityVerdict {
  std::optional<int> block;  ///< least N with independent restrictions on [0, N]
  int block_cap = 0;
  std::string detail;        ///< dependent combination at the cap, if any
};

/// Independence over F_p of the nonzero restrictions to [0, N] of all shifts
/// of the socle words p^{h_j} y_j, for each prime of the encoder.
InjectivityVerdict check_injectivity(const Encoder& e, int block_cap);

struct NoncatastrophicVerdict {
  bool finite_to_finite = true;
  bool finite_preimages = true;
  int horizon = 0;
  std::optional<Word> witness;  ///< finite member with no finite preimage
};

/// Finite messages encode to finite words, and every finite member of G
/// supported in [0, horizon) has a finite preimage.
NoncatastrophicVerdict check_noncatastrophic(const Encoder& e, const GroupShift& g, int trials, int horizon);

/// u = v + w with p v = 0 and w built from the lifted taps of a canonical set
/// of pG.
struct BaseDecomposition {
  Word v;
  Word w;
  Word coefficients;  ///< message over the lifted encoder's source producing w
  Encoder lifted;     ///< taps y_i with p y_i the taps of pG's encoder
};

/// Throws SearchFailure when p u has no finite preimage over pG's taps.
BaseDecomposition base_decompose(const GroupShift& g, std::int64_t p, const Word& u,
                                 const CanonicalGeneratorSet& multiple_set, int pad);

/// Lifts every tap of a canonical set of pG by one power of p inside G.
Encoder lifted_encoder(const GroupShift& g, std::int64_t p, const CanonicalGeneratorSet& multiple_set, int pad);

// ---------------------------------------------------------------------------
// Certificate

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct PrimaryCertificate {
  std::int64_t prime = 2;
  std::optional<int> memory;
  IndexSearch controllability;
  IndexSearch order_controllability;
  WeakControllability socle_density;
  std::optional<CanonicalGeneratorSet> generators;
  std::optional<Encoder> encoder;
  InjectivityVerdict injectivity;
  NoncatastrophicVerdict noncatastrophic;
  std::vector<CheckOutcome> checks;
  std::string failed_stage;  ///< empty when complete

  bool complete() const { return failed_stage.empty(); }
};

struct ConjugacyCertificate {
  Horizons horizons;
  std::vector<PrimaryCertificate> primaries;
  std::optional<Encoder> encoder;  ///< product encoder over H when every prime completed
  std::vector<CheckOutcome> checks;
  std::string failed_stage;

  bool complete() const { return failed_stage.empty(); }
};

ConjugacyCertificate conjugacy_certificate(const GroupShift& g, const Horizons& hz);

}  // namespace gshift
