#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "bohm/term.hpp"

namespace bohm::checks {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok(std::size_t min_cases) const { return failures == 0 && cases >= min_cases; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Random term over a few free names, with some redexes built in.
Term random_term(std::mt19937& rng, int depth, std::uint32_t binders = 0);

// A term drawn from named recursive combinators, their applications, and
// random terms.
Term corpus_term(std::mt19937& rng);

// Up to `steps` contractions of randomly chosen redexes. Reports the number
// actually performed.
Term random_reduction(const Term& t, std::size_t steps, std::mt19937& rng, std::size_t* performed = nullptr);

// Resolved positions of both trees whose clock counts differ.
std::size_t differing_annotations(const Term& m, const Term& n, std::size_t depth, std::size_t fuel);

PropertyResult check_acceleration(unsigned seed, std::size_t cases, bool atomic);
PropertyResult check_simple_invariance(unsigned seed, std::size_t cases);
PropertyResult check_subseq_laws(unsigned seed, std::size_t cases);
PropertyResult check_round_trip(unsigned seed, std::size_t cases);
PropertyResult check_balance_preservation(unsigned seed, std::size_t cases);
PropertyResult check_verdict_soundness(unsigned seed, std::size_t pairs);

}  // namespace bohm::checks
