#include "vinotab/io.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>
#include <thread>

namespace vinotab {

Json big_to_json(const BigInt& v) {
  if (fits_int64(v)) return Json(static_cast<std::int64_t>(v.get_si()));
  return Json(v.get_str());
}

BigInt big_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<std::int64_t>()), 10);
  if (j.is_string()) return BigInt(j.get<std::string>(), 10);
  throw std::invalid_argument("expected an integer or a decimal integer string");
}

Json rational_to_json(const Rational& r) {
  return Json{{"num", big_to_json(r.num())}, {"den", big_to_json(r.den())}};
}

Rational rational_from_json(const Json& j) {
  return Rational(big_from_json(j.at("num")), big_from_json(j.at("den")));
}

Json provenance_to_json(const Provenance& p) {
  Json out{{"kind", std::string(to_string(p.kind))}};
  switch (p.kind) {
    case SourceKind::SquareRule: out["m"] = p.first; break;
    case SourceKind::MultigradeClosed: out["r"] = p.first; break;
    case SourceKind::MultigradeNu:
      out["r"] = p.first;
      out["nu"] = p.second;
      break;
    case SourceKind::Interpolated:
      out["s1"] = p.first;
      out["s2"] = p.second;
      break;
    default: break;
  }
  return out;
}

Provenance provenance_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "Trivial") return Provenance::trivial();
  if (kind == "Diagonal") return Provenance::diagonal();
  if (kind == "SquareRule") return Provenance::square_rule(j.at("m").get<long>());
  if (kind == "MultigradeClosed") return Provenance::closed(j.at("r").get<long>());
  if (kind == "MultigradeNu") return Provenance::refined(j.at("r").get<long>(), j.at("nu").get<long>());
  if (kind == "Interpolated")
    return Provenance::interpolated(j.at("s1").get<long>(), j.at("s2").get<long>());
  if (kind == "ZeroTail") return Provenance::zero_tail();
  throw std::invalid_argument("unknown source kind '" + kind + "'");
}

Json catalog_to_json(const ExponentTable& table) {
  Json entries = Json::array();
  for (const auto& e : table.entries()) {
    entries.push_back(
        Json{{"s", e.s}, {"delta", rational_to_json(e.delta)}, {"source", provenance_to_json(e.source)}});
  }
  return Json{{"version", kCatalogSchemaVersion},
              {"code_version", kCodeVersion},
              {"k", table.k()},
              {"parity_mode", table.sources().fingerprint()},
              {"entries", std::move(entries)}};
}

ExponentTable catalog_from_json(const Json& j) {
  if (j.at("version").get<int>() != kCatalogSchemaVersion)
    throw std::invalid_argument("catalog JSON: unsupported schema version");
  const int k = j.at("k").get<int>();
  if (k < 3) throw std::invalid_argument("catalog JSON: k must be at least 3");
  const SourceSet sources = SourceSet::parse(j.at("parity_mode").get<std::string>());
  std::vector<ExponentPoint> entries;
  for (const auto& e : j.at("entries")) {
    entries.push_back({e.at("s").get<long>(), rational_from_json(e.at("delta")),
                       provenance_from_json(e.at("source"))});
  }
  if (static_cast<long>(entries.size()) != zero_threshold(k))
    throw std::invalid_argument("catalog JSON: wrong number of entries");
  return ExponentTable(k, sources, std::move(entries));
}

namespace {

Json pairs_to_json(const std::vector<std::pair<std::string, long>>& pairs) {
  Json out = Json::object();
  for (const auto& [key, v] : pairs) out[key] = v;
  return out;
}

Json value_to_json(const Rational& v) {
  if (v.is_integer()) return big_to_json(v.num());
  return rational_to_json(v);
}

}  // namespace

Json report_to_json(const BoundReport& r) {
  return Json{{"k", r.k},
              {"name", r.name},
              {"value", value_to_json(r.value)},
              {"decimal_ceil3", r.value.decimal_ceil(3)},
              {"witness", pairs_to_json(r.witness)},
              {"search", pairs_to_json(r.search)},
              {"anchor", r.anchor}};
}

Json weyl_to_json(const WeylReport& r) {
  Json out{{"k", r.k},
           {"name", r.sigma_bw ? "sigma_bw" : "weyl_large_k"},
           {"sigma_inverse_direct", r.sigma_inverse_direct},
           {"tau_inverse", r.tau_inverse},
           {"value", value_to_json(r.sigma)},
           {"sigma_inverse", value_to_json(r.sigma_inverse())},
           {"decimal_ceil3", r.sigma_inverse().decimal_ceil(3)},
           {"witness", pairs_to_json(r.witness)},
           {"search", pairs_to_json(r.search)},
           {"anchor", r.anchor}};
  if (r.sigma_bw) {
    out["sigma_bw"] = rational_to_json(*r.sigma_bw);
    out["sigma_bw_argmax"] = r.sigma_bw_argmax;
  }
  if (r.mu) out["mu"] = rational_to_json(*r.mu);
  if (r.nu) out["nu"] = rational_to_json(*r.nu);
  return out;
}

Json profiles_to_json(const ProfileCounter& pc) {
  Json profiles = Json::array();
  for (const auto& [profile, count] : pc.counts) {
    profiles.push_back(Json{{"profile", profile}, {"count", count.get_str()}});
  }
  return Json{{"k", pc.k}, {"s", pc.s}, {"X", pc.X}, {"shift", pc.shift}, {"profiles", std::move(profiles)}};
}

Json complex_to_json(const std::complex<long double>& z) {
  auto fmt = [](long double v) {
    std::ostringstream os;
    os << std::setprecision(18) << v;
    return os.str();
  };
  return Json::array({fmt(z.real()), fmt(z.imag())});
}

CatalogCache::CatalogCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path CatalogCache::default_dir(const std::optional<std::string>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("VINOTAB_CACHE_DIR"); env != nullptr && *env != '\0') return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg != nullptr && *xdg != '\0')
    return std::filesystem::path(xdg) / "vinotab";
  if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0')
    return std::filesystem::path(home) / ".cache" / "vinotab";
  return {};
}

std::filesystem::path CatalogCache::path_for(int k, const SourceSet& sources) const {
  std::string name = "catalog-k" + std::to_string(k) + "-" + sources.fingerprint() + "-v" +
                     std::to_string(kCatalogSchemaVersion) + "-" + kCodeVersion + ".json";
  return dir_ / name;
}

std::optional<ExponentTable> CatalogCache::load(int k, const SourceSet& sources) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(path_for(k, sources));
  if (!in) return std::nullopt;
  try {
    const Json j = Json::parse(in);
    if (j.at("code_version").get<std::string>() != kCodeVersion) return std::nullopt;
    ExponentTable table = catalog_from_json(j);
    if (table.k() != k || !(table.sources() == sources)) return std::nullopt;
    return table;
  } catch (const std::exception&) {
    return std::nullopt;  // unreadable entries are rebuilt
  }
}

void CatalogCache::store(const ExponentTable& table) const {
  if (!enabled()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) return;
  const auto target = path_for(table.k(), table.sources());
  auto temp = target;
  temp += "." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + ".tmp";
  {
    std::ofstream out(temp);
    if (!out) return;
    out << catalog_to_json(table).dump();
  }
  std::filesystem::rename(temp, target, ec);
}

ExponentTable CatalogCache::get(int k, const SourceSet& sources) const {
  if (auto cached = load(k, sources)) return std::move(*cached);
  ExponentTable table = build_catalog(k, sources);
  store(table);
  return table;
}

}  // namespace vinotab
