#include <algorithm>
#include <random>
#include <sstream>

#include "gshift/encoder.hpp"

namespace gshift {

namespace {

Word random_message(const FiniteAbelianGroup& source, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len_dist(1, 6);
  std::uniform_int_distribution<int> start_dist(-3, 3);
  const int len = len_dist(rng);
  std::vector<GroupElement> symbols;
  for (int i = 0; i < len; ++i) {
    GroupElement s = source.zero();
    for (std::size_t c = 0; c < s.coords.size(); ++c) {
      s.coords[c] = std::uniform_int_distribution<std::int64_t>(0, source.factors()[c].order() - 1)(rng);
    }
    symbols.push_back(std::move(s));
  }
  return Word(start_dist(rng), std::move(symbols), source.rank());
}

CheckOutcome check_homomorphism(const Encoder& e, int trials, std::mt19937_64& rng) {
  for (int t = 0; t < trials; ++t) {
    const Word m1 = random_message(e.source, rng), m2 = random_message(e.source, rng);
    if (encode(e, add(e.source, m1, m2)) != add(e.target, encode(e, m1), encode(e, m2))) {
      return {"homomorphism", false, "trial " + std::to_string(t)};
    }
  }
  return {"homomorphism", true, std::to_string(trials) + " random pairs"};
}

CheckOutcome check_equivariance(const Encoder& e, int trials, std::mt19937_64& rng) {
  for (int t = 0; t < trials; ++t) {
    const Word m = random_message(e.source, rng);
    const std::int64_t n = t % 5 - 2;
    if (encode(e, shift(m, n)) != shift(encode(e, m), n)) {
      return {"shift_equivariance", false, "trial " + std::to_string(t)};
    }
  }
  return {"shift_equivariance", true, std::to_string(trials) + " random messages"};
}

CheckOutcome check_order_bound(const Encoder& e) {
  for (std::size_t j = 0; j < e.taps.size(); ++j) {
    const std::int64_t q = e.source.factors()[j].order();
    if (q % std::max<std::int64_t>(word_order(e.target, e.taps[j]), 1) != 0) {
      return {"order_bound", false, "tap " + std::to_string(j) + " order does not divide " + std::to_string(q)};
    }
  }
  return {"order_bound", true, "every tap order divides its source order"};
}

CheckOutcome check_surjectivity(const Encoder& e, const GroupShift& g, int horizon) {
  for (int len = 1; len <= horizon; ++len) {
    if (encoder_image(e, 0, len - 1).form != window_projection(g, 0, len - 1).form) {
      return {"surjectivity", false, "image differs on window [0, " + std::to_string(len - 1) + "]"};
    }
  }
  return {"surjectivity", true, "windows [0, 0] .. [0, " + std::to_string(horizon - 1) + "]"};
}

void append_encoder_checks(std::vector<CheckOutcome>& checks, const Encoder& e, const GroupShift& g,
                           const Horizons& hz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  checks.push_back(check_homomorphism(e, hz.trials, rng));
  checks.push_back(check_equivariance(e, hz.trials, rng));
  checks.push_back(check_order_bound(e));
  checks.push_back(check_surjectivity(e, g, hz.check_horizon));
}

std::string first_failure(const std::vector<CheckOutcome>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return c.name;
  }
  return {};
}

PrimaryCertificate primary_certificate(const GroupShift& g, std::int64_t p, const Horizons& hz) {
  PrimaryCertificate pc;
  pc.prime = p;
  GroupShift gp = primary_shift(g, p);
  if (gp.generators.empty()) {
    pc.generators = CanonicalGeneratorSet{p, gp.alphabet, {}, 0};
    pc.encoder = make_encoder(*pc.generators);
    return pc;
  }

  pc.memory = gp.declared_memory ? gp.declared_memory : finite_type_memory(gp, hz.memory_cap);
  pc.checks.push_back({"finite_type", pc.memory.has_value(),
                       pc.memory ? "memory " + std::to_string(*pc.memory)
                                 : "no memory up to " + std::to_string(hz.memory_cap)});
  if (!pc.memory) {
    pc.failed_stage = "finite_type";
    return pc;
  }
  gp.declared_memory = pc.memory;

  pc.controllability = controllability_index(gp, hz.past_horizon, hz.search_cap);
  pc.order_controllability = order_controllability_index(gp, hz.past_horizon, hz.search_cap);
  if (!pc.order_controllability.index) {
    pc.failed_stage = "order_controllability";
    return pc;
  }

  pc.socle_density = weak_controllability_check(gp, DerivedShift::socle, p, hz.check_horizon);
  if (!pc.socle_density.holds) {
    pc.failed_stage = "socle_density";
    return pc;
  }

  try {
    pc.generators = canonical_generators(gp, p, hz);
  } catch (const SearchFailure& e) {
    pc.checks.push_back({"canonical_generators", false, e.what()});
    pc.failed_stage = "canonical_generators";
    return pc;
  }
  pc.encoder = make_encoder(*pc.generators);

  append_encoder_checks(pc.checks, *pc.encoder, gp, hz, 0x5eed0000 + static_cast<std::uint64_t>(p));

  pc.injectivity = check_injectivity(*pc.encoder, hz.block_cap);
  pc.checks.push_back({"injectivity", pc.injectivity.block.has_value(),
                       pc.injectivity.block ? "block [0, " + std::to_string(*pc.injectivity.block) + "]"
                                            : pc.injectivity.detail});

  pc.noncatastrophic = check_noncatastrophic(*pc.encoder, gp, hz.trials, hz.check_horizon);
  pc.checks.push_back({"noncatastrophic", pc.noncatastrophic.finite_to_finite && pc.noncatastrophic.finite_preimages,
                       "finite members on [0, " + std::to_string(hz.check_horizon - 1) + "]"});

  pc.failed_stage = first_failure(pc.checks);
  return pc;
}

}  // namespace

ConjugacyCertificate conjugacy_certificate(const GroupShift& g, const Horizons& hz) {
  ConjugacyCertificate cert;
  cert.horizons = hz;
  for (std::int64_t p : g.alphabet.primes()) {
    cert.primaries.push_back(primary_certificate(g, p, hz));
    if (cert.failed_stage.empty() && !cert.primaries.back().complete()) {
      cert.failed_stage = "p=" + std::to_string(p) + ": " + cert.primaries.back().failed_stage;
    }
  }
  if (!cert.failed_stage.empty()) return cert;

  // Product of the primary encoders, taps embedded back into H.
  Encoder product;
  product.target = g.alphabet;
  std::vector<CyclicFactor> factors;
  for (const auto& pc : cert.primaries) {
    const PrimaryComponent comp = primary_component(g.alphabet, pc.prime);
    for (std::size_t j = 0; j < pc.encoder->taps.size(); ++j) {
      factors.push_back(pc.encoder->source.factors()[j]);
      product.taps.push_back(embed_word(comp, pc.encoder->taps[j], g.alphabet.rank()));
    }
  }
  product.source = FiniteAbelianGroup::from_factors(std::move(factors));
  cert.encoder = std::move(product);
  append_encoder_checks(cert.checks, *cert.encoder, g, hz, 0x5eed);
  cert.failed_stage = first_failure(cert.checks);
  return cert;
}

}  // namespace gshift
