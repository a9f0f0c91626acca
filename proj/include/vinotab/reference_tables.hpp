#pragma once

// Published reference values the computed bounds are reconciled against.
// Decimal values are upper bounds rounded up in the last printed place.

#include <map>
#include <optional>
#include <string>

namespace vinotab {

enum class RefTable {
  GTilde,         // H(k), upper bounds for G~(k), 5 <= k <= 20
  HuaRoute,       // s1(k), 3 <= k <= 20
  GTildePlus,     // H+(k), 5 <= k <= 20
  WeylSigma,      // Sigma_1(k), 6 <= k <= 20
  TStar,          // t*(k), 4 <= k <= 8
  HuaS,           // S_k, 4 <= k <= 8
  PriorGTilde,    // earlier bounds for G~(k), 5 <= k <= 20
};

struct EmbeddedTables {
  std::map<RefTable, std::map<int, std::string>> values;
  std::string xi = "0.312383";
  std::string C = "1.542749";

  /// Throws std::out_of_range when (table, k) is not tabulated.
  const std::string& at(RefTable table, int k) const;
  std::optional<std::string> find(RefTable table, int k) const;

  static const EmbeddedTables& get();
};

std::string to_string(RefTable table);

}  // namespace vinotab
