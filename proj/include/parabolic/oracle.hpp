#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "parabolic/core.hpp"

namespace parabolic {

enum class Conclusion { Rational, StablyRational, Unknown };

inline const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::Rational: return "rational";
    case Conclusion::StablyRational: return "stably-rational";
    case Conclusion::Unknown: return "unknown";
  }
  return "?";
}

/// One attempted rule. `condition` states what was checked and how it came out.
struct RuleRecord {
  std::string ruleId;
  std::string citation;
  bool fired = false;
  std::string condition;
  std::map<std::string, std::string> bindings;

  friend bool operator==(const RuleRecord&, const RuleRecord&) = default;
};

struct NormalizedInput {
  Int dModR = 0;
  std::map<std::string, std::vector<Int>> mults;  // trivial points dropped

  friend bool operator==(const NormalizedInput&, const NormalizedInput&) = default;
};

struct Verdict {
  Conclusion conclusion = Conclusion::Unknown;
  std::optional<Int> levelBound;  // set for StablyRational
  std::vector<RuleRecord> trail;
  NormalizedInput normalized;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Fixed citation strings, keyed by rule id.
inline const std::map<std::string, std::string>& rule_citations() {
  static const std::map<std::string, std::string> table{
      {"R0", "rank 1: the fixed-determinant moduli space is a point"},
      {"R1", "Newstead: trivial flags and degree = +-1 mod rank give a rational space"},
      {"R2", "a full flag at some marked point gives a rational space"},
      {"R3", "a multiplicity equal to 1 at some marked point gives a rational space"},
      {"R4", "some step of the weighted filtration has degree = +-1 mod rank"},
      {"R5", "gcd(r,d) = 1 and gcd(g,d') = 1 or gcd(g,r-d') = 1 gives a rational space"},
      {"R6", "gcd(r,d) = 1 gives stable rationality of level at most r-1"},
  };
  return table;
}

inline Int mod_floor(Int a, Int m) {
  Int x = a % m;
  return x < 0 ? x + m : x;
}

inline bool trivial_flags(const ParabolicData& data) {
  for (const auto& p : data.points) {
    if (p.mults.size() != 1) return false;
  }
  return true;
}

/// { d − Σ_p s_p mod r : s_p a partial sum of m(p), 0 and r included }.
inline std::set<Int> reachable_degrees(const ParabolicData& data) {
  std::set<Int> cur{mod_floor(data.d, data.r)};
  for (const auto& p : data.points) {
    std::vector<Int> sums{0};
    for (Int m : p.mults) sums.push_back(sums.back() + m);
    std::set<Int> next;
    for (Int x : cur) {
      for (Int s : sums) next.insert(mod_floor(x - s, data.r));
    }
    cur = std::move(next);
  }
  return cur;
}

inline NormalizedInput normalize_for_rationality(const ParabolicData& data) {
  NormalizedInput n;
  n.dModR = mod_floor(data.d, data.r);
  for (const auto& p : data.points) {
    if (p.mults.size() > 1) n.mults[p.id] = p.mults;
  }
  return n;
}

/**
 * @brief Rationality verdict for the fixed-determinant moduli space.
 *
 * Rules R0..R6 are tried in order and the first that fires decides. Weights
 * are ignored: the birational type only depends on the quasi-parabolic data.
 * The trail lists every rule tried, each with the condition it evaluated.
 */
inline Verdict decide(const ParabolicData& data) {
  require_valid(data);
  Verdict v;
  v.normalized = normalize_for_rationality(data);
  const Int r = data.r;
  const Int dm = v.normalized.dModR;
  const auto& cite = rule_citations();
  auto attempt = [&](const std::string& id, bool fired, std::string condition,
                     std::map<std::string, std::string> bindings = {}) {
    v.trail.push_back(RuleRecord{id, cite.at(id), fired, std::move(condition), std::move(bindings)});
    return fired;
  };
  auto is_unit = [&](Int x) { return r > 1 && (mod_floor(x, r) == 1 || mod_floor(x, r) == r - 1); };

  if (attempt("R0", r == 1, r == 1 ? "r = 1" : "r = " + std::to_string(r) + " > 1")) {
    v.conclusion = Conclusion::Rational;
    return v;
  }
  const bool trivial = trivial_flags(data);
  if (attempt("R1", trivial && is_unit(dm),
              std::string(trivial ? "flags trivial" : "flags not trivial") + ", d mod r = " + std::to_string(dm),
              {{"dModR", std::to_string(dm)}})) {
    v.conclusion = Conclusion::Rational;
    return v;
  }
  std::string fullAt;
  std::string unitAt;
  for (const auto& p : data.points) {
    bool full = std::all_of(p.mults.begin(), p.mults.end(), [](Int m) { return m == 1; });
    if (full && fullAt.empty()) fullAt = p.id;
    bool unit = std::any_of(p.mults.begin(), p.mults.end(), [](Int m) { return m == 1; });
    if (unit && unitAt.empty()) unitAt = p.id;
  }
  if (attempt("R2", !fullAt.empty(), fullAt.empty() ? "no point carries a full flag" : "full flag at " + fullAt,
              fullAt.empty() ? std::map<std::string, std::string>{} : std::map<std::string, std::string>{{"point", fullAt}})) {
    v.conclusion = Conclusion::Rational;
    return v;
  }
  if (attempt("R3", !unitAt.empty(), unitAt.empty() ? "no multiplicity equals 1" : "multiplicity 1 at " + unitAt,
              unitAt.empty() ? std::map<std::string, std::string>{} : std::map<std::string, std::string>{{"point", unitAt}})) {
    v.conclusion = Conclusion::Rational;
    return v;
  }
  auto reach = reachable_degrees(data);
  std::string reachStr;
  for (Int x : reach) reachStr += (reachStr.empty() ? "" : ",") + std::to_string(x);
  bool r4 = std::any_of(reach.begin(), reach.end(), is_unit);
  if (attempt("R4", r4, "reachable degrees mod r = {" + reachStr + "}" + (r4 ? " contain" : " miss") + " +-1",
              {{"reachable", reachStr}})) {
    v.conclusion = Conclusion::Rational;
    return v;
  }
  // R5 and R6 are applied to every reachable degree: each filtration step is
  // isomorphic to the original space after a shift.
  std::vector<Int> coprimeDegrees;
  for (Int e : reach) {
    if (std::gcd(r, e) == 1) coprimeDegrees.push_back(e);
  }
  std::string coprimeStr;
  for (Int e : coprimeDegrees) coprimeStr += (coprimeStr.empty() ? "" : ",") + std::to_string(e);
  if (coprimeDegrees.empty()) {
    attempt("R5", false, "no reachable degree is coprime to r");
  } else {
    std::optional<Int> hit;
    std::string checked;
    for (Int e : coprimeDegrees) {
      const Int g1 = std::gcd(data.g, e);
      const Int g2 = std::gcd(data.g, r - e);
      checked += (checked.empty() ? "" : "; ") + std::string("d'=") + std::to_string(e) + ": gcd(g,d')=" +
                 std::to_string(g1) + ", gcd(g,r-d')=" + std::to_string(g2);
      if (!hit && (g1 == 1 || g2 == 1)) hit = e;
    }
    std::map<std::string, std::string> bindings{{"coprimeDegrees", coprimeStr}};
    if (hit) bindings["dPrime"] = std::to_string(*hit);
    if (attempt("R5", hit.has_value(),
                "flags forgotten (flag-variety fibration over the trivial-flag space); " + checked, bindings)) {
      v.conclusion = Conclusion::Rational;
      return v;
    }
  }
  if (attempt("R6", !coprimeDegrees.empty(),
              coprimeDegrees.empty() ? "no reachable degree is coprime to r"
                                     : "reachable degrees coprime to r: {" + coprimeStr + "}",
              coprimeDegrees.empty() ? std::map<std::string, std::string>{}
                                     : std::map<std::string, std::string>{{"levelBound", std::to_string(r - 1)}})) {
    v.conclusion = Conclusion::StablyRational;
    v.levelBound = r - 1;
    return v;
  }
  v.conclusion = Conclusion::Unknown;
  return v;
}

/// Genera g in [2, gMax] for which the trivial-flag verdict at (r, d) is not
/// Rational. Requires gcd(r, d) = 1.
inline std::vector<Int> open_genera(Int r, Int d, Int gMax) {
  if (r < 1) throw InputError("rank must be >= 1");
  if (std::gcd(r, d) != 1) throw InputError("requires gcd(r,d)=1");
  std::vector<Int> out;
  for (Int g = 2; g <= gMax; ++g) {
    if (decide(make_data(g, r, d, {})).conclusion != Conclusion::Rational) out.push_back(g);
  }
  return out;
}

}  // namespace parabolic
