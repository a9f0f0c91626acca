#pragma once

// Reconciliation of computed values against the embedded reference tables
// and the oracle/identity checks behind `verify`.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "vinotab/io.hpp"

namespace vinotab {

enum class Verdict { Match, Dominates, WithinTolerance, Fail };

std::string to_string(Verdict v);

struct Reconciliation {
  std::string suite;
  std::string item;
  int k = 0;  // 0 when not degree-specific
  std::string ours;
  std::string reference;
  std::string difference;
  Verdict verdict = Verdict::Fail;
};

/// Verdict for an upper bound `ours` against a published upper bound given as
/// a decimal rounded up at its last place. Match when `ours` rounds up to the
/// same decimal; Dominates when strictly smaller; WithinTolerance when at most
/// `tolerance` larger. With `equality` set, anything but Match fails.
Verdict upper_bound_verdict(const Rational& ours, const std::string& reference,
                            const Rational& tolerance = Rational(0), bool equality = false);

/// Loads or builds catalogs for every requested degree, in parallel. Fresh
/// builds are written back only when `store` is set.
std::map<int, ExponentTable> catalogs_for(const std::set<int>& degrees, const CatalogCache& cache,
                                          const SourceSet& sources = SourceSet::all(),
                                          bool store = true);

/// suite: "tables" | "oracle" | "identities" | "all". Throws std::invalid_argument otherwise.
/// Reads the cache but never writes it.
std::vector<Reconciliation> run_verify(const std::string& suite, const CatalogCache& cache);

}  // namespace vinotab
