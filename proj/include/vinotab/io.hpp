#pragma once

// JSON serialization and the on-disk catalog cache.

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "vinotab/counting_oracle.hpp"
#include "vinotab/exp_sums.hpp"
#include "vinotab/exponent_catalog.hpp"
#include "vinotab/waring_bounds.hpp"
#include "vinotab/weyl_bounds.hpp"

namespace vinotab {

inline constexpr int kCatalogSchemaVersion = 1;
/// Bumped whenever catalog contents could change for the same inputs.
inline constexpr const char* kCodeVersion = "1.0.0";

using Json = nlohmann::json;

/// Integers that fit in 64 bits become JSON numbers; larger ones decimal strings.
Json big_to_json(const BigInt& v);
BigInt big_from_json(const Json& j);

/// {"num": n, "den": d}
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const Json& j);

/// {version, code_version, k, parity_mode, entries: [{s, delta, source}]}
Json catalog_to_json(const ExponentTable& table);
ExponentTable catalog_from_json(const Json& j);

/// {k, name, value, decimal_ceil3, witness, search, anchor}
Json report_to_json(const BoundReport& r);
Json weyl_to_json(const WeylReport& r);

/// {k, s, X, shift, profiles: [{profile: [...], count: "n"}]}
Json profiles_to_json(const ProfileCounter& pc);

/// [re, im] as decimal strings.
Json complex_to_json(const std::complex<long double>& z);

/// Catalog cache keyed by degree, source-set fingerprint and code version.
class CatalogCache {
 public:
  /// An empty directory disables caching.
  explicit CatalogCache(std::filesystem::path dir);

  /// --cache-dir, else $VINOTAB_CACHE_DIR, else $XDG_CACHE_HOME/vinotab,
  /// else $HOME/.cache/vinotab.
  static std::filesystem::path default_dir(const std::optional<std::string>& flag);

  std::filesystem::path path_for(int k, const SourceSet& sources) const;
  std::optional<ExponentTable> load(int k, const SourceSet& sources) const;
  void store(const ExponentTable& table) const;
  /// Loads when present and valid, otherwise builds and stores.
  ExponentTable get(int k, const SourceSet& sources) const;

  bool enabled() const { return !dir_.empty(); }

 private:
  std::filesystem::path dir_;
};

}  // namespace vinotab
