#include "vinotab/exponent_catalog.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace vinotab {

std::string_view to_string(Invalidity why) {
  switch (why) {
    case Invalidity::RRange: return "r-range";
    case Invalidity::SThreshold: return "s-threshold";
    case Invalidity::NuExcess: return "nu-excess";
  }
  return "unknown";
}

std::string_view to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::Trivial: return "Trivial";
    case SourceKind::Diagonal: return "Diagonal";
    case SourceKind::SquareRule: return "SquareRule";
    case SourceKind::MultigradeClosed: return "MultigradeClosed";
    case SourceKind::MultigradeNu: return "MultigradeNu";
    case SourceKind::Interpolated: return "Interpolated";
    case SourceKind::ZeroTail: return "ZeroTail";
  }
  return "Unknown";
}

std::string Provenance::str() const {
  std::ostringstream os;
  os << to_string(kind);
  switch (kind) {
    case SourceKind::SquareRule: os << "(m=" << first << ")"; break;
    case SourceKind::MultigradeClosed: os << "(r=" << first << ")"; break;
    case SourceKind::MultigradeNu: os << "(r=" << first << ",nu=" << second << ")"; break;
    case SourceKind::Interpolated: os << "(" << first << "," << second << ")"; break;
    default: break;
  }
  return os.str();
}

SourceSet SourceSet::parse(std::string_view text) {
  if (text == "all") return all();
  SourceSet out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto token = text.substr(start, plus == std::string_view::npos ? std::string_view::npos
                                                                           : plus - start);
    if (token == "closed-form-only") {
      out.refined_branch = false;
    } else if (token == "no-square-rule") {
      out.square_rule = false;
    } else {
      throw std::invalid_argument("unknown source set '" + std::string(token) + "'");
    }
    if (plus == std::string_view::npos) break;
    start = plus + 1;
  }
  return out;
}

std::string SourceSet::fingerprint() const {
  if (refined_branch && square_rule) return "all";
  std::string out;
  if (!refined_branch) out = "closed-form-only";
  if (!square_rule) out += out.empty() ? "no-square-rule" : "+no-square-rule";
  return out;
}

long max_r(int k) { return std::min<long>(k - 2, (k + 1) / 2); }

long zero_threshold(int k) { return static_cast<long>(k) * k - k + 1; }

long closed_form_threshold(int k, long r) {
  return static_cast<long>(k) * k - r * k + r * (r + 3) / 2 - 1;
}

namespace {

bool r_admissible(int k, long r) { return r >= 1 && r <= max_r(k); }

long diagonal_limit(int k) { return static_cast<long>(k + 1) * (k + 1) / 4; }

long trivial_exponent(int k) { return static_cast<long>(k) * (k + 1) / 2; }

}  // namespace

Checked<Rational> closed_form_exponent(int k, long r, long s) {
  if (k < 3 || !r_admissible(k, r)) return Invalidity::RRange;
  if (s < closed_form_threshold(k, r)) return Invalidity::SThreshold;
  return Rational(r * (r - 1) * (3L * k - 2 * r - 5), 6 * (s - k + 1));
}

Rational nu_star(int k, long r, long s, Branch branch) {
  if (r < 1) throw std::invalid_argument("nu_star: r must be positive");
  if (s < k + r) throw std::invalid_argument("nu_star: s must be at least k + r");
  if (branch == Branch::Closed) return Rational(0);
  Rational sum;
  for (long m = 1; m <= r; ++m) sum += Rational(m * (k - m - 1), s - k - m + 1);
  return sum;
}

Rational closed_branch_sum(int k, long r, long s) {
  long numerator = 0;
  for (long m = 1; m <= r; ++m) numerator += (m - 1) * (k - m - 1);
  return Rational(numerator, s - k + 1);
}

Rational refined_exponent_at(int k, long r, long s, long nu) {
  if (s < k + r) throw std::invalid_argument("refined_exponent_at: s must be at least k + r");
  Rational head;
  Rational budget;
  for (long m = 1; m <= r; ++m) {
    head += Rational((m - 1) * (k - m - 1), s - k - m + 1);
    budget += Rational(m * (k - m - 1), s - k - m + 1);
  }
  return head - (budget - Rational(nu)) * Rational(r - 1, s - k + 1);
}

Checked<ShiftedExponent> refined_exponent(int k, long r, long s) {
  if (k < 3 || !r_admissible(k, r)) return Invalidity::RRange;
  if (s < k + r) return Invalidity::SThreshold;
  const long nu = std::max(closed_form_threshold(k, r) - s, 0L);
  if (Rational(nu) > nu_star(k, r, s, Branch::Refined)) return Invalidity::NuExcess;
  return ShiftedExponent{refined_exponent_at(k, r, s, nu), nu};
}

long largest_nu_shift(int k, long r) {
  const long threshold = closed_form_threshold(k, r);
  long best = 0;
  for (long nu = 0; nu <= k; ++nu) {
    const long s = threshold - nu;
    if (s < k + r) break;
    if (nu_star(k, r, s, Branch::Refined) >= Rational(nu)) best = nu;
  }
  return best;
}

Rational prior_exponent(int k, long s, bool square_rule) {
  Rational best(trivial_exponent(k));
  if (s <= diagonal_limit(k)) best = min(best, Rational(trivial_exponent(k) - s));
  if (square_rule) {
    for (long m = 1; 2 * m <= k; ++m) {
      if (s >= (k - m) * (k - m) + (k - m)) best = min(best, Rational(m * m));
    }
  }
  return best;
}

namespace {

// Enumerates every admissible source at s in the canonical order, handing out
// long double approximations. Exact values are recomputed only on demand.
void for_each_source_approx(int k, long s, const SourceSet& sources,
                            const std::function<void(const Provenance&, long double)>& visit) {
  const long triv = trivial_exponent(k);
  visit(Provenance::trivial(), static_cast<long double>(triv));
  if (s <= diagonal_limit(k)) visit(Provenance::diagonal(), static_cast<long double>(triv - s));
  if (sources.square_rule) {
    for (long m = 1; 2 * m <= k; ++m) {
      if (s >= (k - m) * (k - m) + (k - m))
        visit(Provenance::square_rule(m), static_cast<long double>(m * m));
    }
  }
  const long rmax = max_r(k);
  for (long r = 1; r <= rmax; ++r) {
    if (s >= closed_form_threshold(k, r)) {
      visit(Provenance::closed(r),
            static_cast<long double>(r * (r - 1) * (3L * k - 2 * r - 5)) /
                static_cast<long double>(6 * (s - k + 1)));
    }
  }
  if (!sources.refined_branch) return;
  long double head = 0.0L;
  long double budget = 0.0L;
  for (long r = 1; r <= rmax && s >= k + r; ++r) {
    const long double denom = static_cast<long double>(s - k - r + 1);
    head += static_cast<long double>((r - 1) * (k - r - 1)) / denom;
    budget += static_cast<long double>(r * (k - r - 1)) / denom;
    const long nu = std::max(closed_form_threshold(k, r) - s, 0L);
    // Admissibility is re-tested exactly in exact_source().
    if (static_cast<long double>(nu) > budget + 1e-12L) continue;
    visit(Provenance::refined(r, nu),
          head - (budget - static_cast<long double>(nu)) * static_cast<long double>(r - 1) /
                     static_cast<long double>(s - k + 1));
  }
}

std::optional<Rational> exact_source(int k, long s, const Provenance& p) {
  switch (p.kind) {
    case SourceKind::Trivial: return Rational(trivial_exponent(k));
    case SourceKind::Diagonal: return Rational(trivial_exponent(k) - s);
    case SourceKind::SquareRule: return Rational(p.first * p.first);
    case SourceKind::MultigradeClosed: {
      auto v = closed_form_exponent(k, p.first, s);
      if (!v) return std::nullopt;
      return v.value();
    }
    case SourceKind::MultigradeNu: {
      auto v = refined_exponent(k, p.first, s);
      if (!v) return std::nullopt;
      return v.value().delta;
    }
    default: return std::nullopt;
  }
}

template <class Y>
Y cross(long ox, const Y& oy, long ax, const Y& ay, long bx, const Y& by) {
  return Y(ax - ox) * (by - oy) - (ay - oy) * Y(bx - ox);
}

// Indices (into xs) of the lower convex hull, collinear points dropped.
template <class Y>
std::vector<std::size_t> lower_hull(const std::vector<long>& xs, const std::vector<Y>& ys) {
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    while (hull.size() >= 2) {
      const auto o = hull[hull.size() - 2];
      const auto a = hull[hull.size() - 1];
      if (cross(xs[o], ys[o], xs[a], ys[a], xs[i], ys[i]) <= Y(0)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  return hull;
}

constexpr long double kSelectionSlack = 1e-9L;

}  // namespace

std::vector<ExponentPoint> source_exponents(int k, long s, const SourceSet& sources) {
  std::vector<ExponentPoint> out;
  for_each_source_approx(k, s, sources, [&](const Provenance& p, long double) {
    if (auto v = exact_source(k, s, p)) out.push_back({s, *v, p});
  });
  return out;
}

ExponentTable::ExponentTable(int k, SourceSet sources, std::vector<ExponentPoint> entries)
    : k_(k), sources_(sources), entries_(std::move(entries)) {
  approx_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].s != static_cast<long>(i) + 1)
      throw std::invalid_argument("ExponentTable: entries must cover s = 1, 2, ... in order");
    approx_.push_back(entries_[i].delta.to_long_double());
  }
}

const Rational& ExponentTable::delta(long s) const {
  static const Rational zero(0);
  if (s < 1) throw std::out_of_range("ExponentTable::delta: s must be positive");
  if (s > s_max()) return zero;
  return entries_[static_cast<std::size_t>(s - 1)].delta;
}

ExponentPoint ExponentTable::point(long s) const {
  if (s < 1) throw std::out_of_range("ExponentTable::point: s must be positive");
  if (s > s_max()) return {s, Rational(0), Provenance::zero_tail()};
  return entries_[static_cast<std::size_t>(s - 1)];
}

long double ExponentTable::approx(long s) const {
  if (s < 1) throw std::out_of_range("ExponentTable::approx: s must be positive");
  if (s > s_max()) return 0.0L;
  return approx_[static_cast<std::size_t>(s - 1)];
}

std::vector<long> ExponentTable::vertices() const {
  std::vector<long> out;
  for (const auto& e : entries_) {
    if (e.source.kind != SourceKind::Interpolated) out.push_back(e.s);
  }
  return out;
}

ExponentTable build_catalog(int k, const SourceSet& sources) {
  if (k < 3) throw std::invalid_argument("build_catalog: degree must be at least 3");
  const long smax = zero_threshold(k);

  // Pass 1: pointwise minimum in long double.
  std::vector<long> xs(static_cast<std::size_t>(smax));
  std::vector<long double> approx_min(static_cast<std::size_t>(smax));
  for (long s = 1; s <= smax; ++s) {
    long double best = static_cast<long double>(trivial_exponent(k));
    for_each_source_approx(k, s, sources,
                           [&](const Provenance&, long double v) { best = std::min(best, v); });
    xs[static_cast<std::size_t>(s - 1)] = s;
    approx_min[static_cast<std::size_t>(s - 1)] = best;
  }

  // Pass 2: only points within the slack of the approximate envelope can be
  // corners of the exact envelope; evaluate those exactly.
  const auto approx_hull = lower_hull(xs, approx_min);
  std::vector<long> sel_x;
  std::vector<Rational> sel_y;
  std::vector<Provenance> sel_src;
  for (std::size_t h = 0; h + 1 < approx_hull.size(); ++h) {
    const auto i0 = approx_hull[h];
    const auto i1 = approx_hull[h + 1];
    const std::size_t stop = (h + 2 == approx_hull.size()) ? i1 + 1 : i1;
    for (std::size_t i = i0; i < stop; ++i) {
      const long double t = static_cast<long double>(i - i0) / static_cast<long double>(i1 - i0);
      const long double envelope = approx_min[i0] + t * (approx_min[i1] - approx_min[i0]);
      if (approx_min[i] > envelope + kSelectionSlack) continue;
      const long s = xs[i];
      std::optional<Rational> best;
      Provenance best_src;
      auto consider = [&](long double cutoff) {
        for_each_source_approx(k, s, sources, [&](const Provenance& p, long double v) {
          if (v > cutoff) return;
          auto exact = exact_source(k, s, p);
          if (exact && (!best || *exact < *best)) {
            best = std::move(exact);
            best_src = p;
          }
        });
      };
      consider(approx_min[i] + kSelectionSlack);
      // Only reachable if a refined point passed the loose nu test but fails the exact one.
      if (!best) consider(std::numeric_limits<long double>::infinity());
      sel_x.push_back(s);
      sel_y.push_back(*best);
      sel_src.push_back(best_src);
    }
  }
  // Pass 3: exact envelope over the candidates, then fill by chords.
  const auto hull = lower_hull(sel_x, sel_y);
  std::vector<ExponentPoint> entries;
  entries.reserve(static_cast<std::size_t>(smax));
  std::size_t cursor = 0;  // walks sel_* alongside s
  for (std::size_t h = 0; h < hull.size(); ++h) {
    const auto v = hull[h];
    const long x1 = sel_x[v];
    entries.push_back({x1, sel_y[v], sel_src[v]});
    if (h + 1 == hull.size()) break;
    const auto w = hull[h + 1];
    const long x2 = sel_x[w];
    const Rational& y1 = sel_y[v];
    const Rational& y2 = sel_y[w];
    while (cursor < sel_x.size() && sel_x[cursor] <= x1) ++cursor;
    for (long s = x1 + 1; s < x2; ++s) {
      Rational chord = (y1 * Rational(x2 - s) + y2 * Rational(s - x1)) / Rational(x2 - x1);
      Provenance src = Provenance::interpolated(x1, x2);
      if (cursor < sel_x.size() && sel_x[cursor] == s) {
        if (sel_y[cursor] == chord) src = sel_src[cursor];
        ++cursor;
      }
      entries.push_back({s, std::move(chord), src});
    }
  }

  // Monotone closure; a no-op for a convex envelope that ends at zero, kept so
  // the table is non-increasing whatever the source set.
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].delta < entries[i].delta) {
      entries[i].delta = entries[i - 1].delta;
      entries[i].source = entries[i - 1].source;
    }
  }
  return ExponentTable(k, sources, std::move(entries));
}

long least_s_with_delta_at_most(const ExponentTable& table, const Rational& bound) {
  const auto& entries = table.entries();
  const auto it = std::partition_point(entries.begin(), entries.end(),
                                       [&](const ExponentPoint& e) { return e.delta > bound; });
  if (it == entries.end()) {
    throw NotFound("no s <= " + std::to_string(table.s_max()) + " has delta <= " + bound.str());
  }
  return it->s;
}

}  // namespace vinotab
