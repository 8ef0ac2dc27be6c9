#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "parabolic/rational.hpp"

namespace parabolic {

using Int = std::int64_t;

/// Per-point list of compressed weights, one Rational per multiplicity block,
/// indexed in the same order as ParabolicData::points.
using Weights = std::vector<std::vector<Rational>>;

struct MarkedPoint {
  std::string id;
  std::vector<Int> mults;
  std::optional<std::vector<Rational>> weights;

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

/**
 * @brief Genus, rank, degree and the quasi-parabolic (plus optional weight)
 * data at each marked point.
 *
 * Points are kept sorted by id; use make_data() or sort_points() after
 * building one by hand.
 */
struct ParabolicData {
  Int g = 2;
  Int r = 1;
  Int d = 0;
  std::vector<MarkedPoint> points;

  std::size_t n() const { return points.size(); }

  bool has_weights() const {
    return std::all_of(points.begin(), points.end(),
                       [](const MarkedPoint& p) { return p.weights.has_value(); });
  }

  friend bool operator==(const ParabolicData&, const ParabolicData&) = default;
};

/// A destabilizing-subbundle type: degree, rank, and per-point multiplicities
/// of the induced flag on the subbundle (indexed by the ambient blocks).
struct SubType {
  Int dPrime = 0;
  Int rPrime = 1;
  std::vector<std::vector<Int>> mPrime;

  friend bool operator==(const SubType&, const SubType&) = default;
  friend auto operator<=>(const SubType&, const SubType&) = default;
};

/// Per point, the r weights obtained by repeating each block weight by its
/// multiplicity. Weakly increasing.
using ExpandedWeight = std::vector<std::vector<Rational>>;

inline void sort_points(ParabolicData& data) {
  std::stable_sort(data.points.begin(), data.points.end(),
                   [](const MarkedPoint& a, const MarkedPoint& b) { return a.id < b.id; });
}

inline ParabolicData make_data(Int g, Int r, Int d, std::vector<MarkedPoint> points) {
  ParabolicData out{g, r, d, std::move(points)};
  sort_points(out);
  return out;
}

/// The weight vector currently attached to data. Requires weights at every point.
inline Weights weights_of(const ParabolicData& data) {
  Weights w;
  w.reserve(data.n());
  for (const auto& p : data.points) {
    if (!p.weights) throw InputError("point " + p.id + ": missing weights");
    w.push_back(*p.weights);
  }
  return w;
}

inline ParabolicData with_weights(ParabolicData data, const Weights& w) {
  if (w.size() != data.n()) throw InputError("weight vector has wrong number of points");
  for (std::size_t p = 0; p < data.n(); ++p) data.points[p].weights = w[p];
  return data;
}

inline ParabolicData without_weights(ParabolicData data) {
  for (auto& p : data.points) p.weights.reset();
  return data;
}

/// Checks that a weight list is strictly increasing inside [0,1) and has one
/// entry per block. Returns the violations, empty when fine.
inline std::vector<std::string> weight_violations(const std::string& id, std::size_t blocks,
                                                  const std::vector<Rational>& w) {
  std::vector<std::string> errs;
  const std::string where = "point " + id;
  if (w.size() != blocks) {
    errs.push_back(where + ": expected " + std::to_string(blocks) + " weights, got " +
                   std::to_string(w.size()));
    return errs;
  }
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::string at = where + " weight[" + std::to_string(i) + "]";
    if (w[i].sign() < 0) errs.push_back(at + ": weight < 0");
    if (w[i] >= Rational(1)) errs.push_back(at + ": weight >= 1");
    if (i > 0 && !(w[i - 1] < w[i])) errs.push_back(at + ": weights not strictly increasing");
  }
  return errs;
}

/// Full list of violated invariants; empty means the data is valid.
inline std::vector<std::string> validate(const ParabolicData& data) {
  std::vector<std::string> errs;
  if (data.g < 2) errs.emplace_back("genus < 2");
  if (data.r < 1) errs.emplace_back("rank < 1");
  for (std::size_t k = 0; k < data.points.size(); ++k) {
    const auto& p = data.points[k];
    const std::string where = "point " + p.id;
    if (p.id.empty()) errs.push_back("point #" + std::to_string(k) + ": empty id");
    if (k > 0 && data.points[k - 1].id == p.id) errs.push_back(where + ": duplicate id");
    if (p.mults.empty()) {
      errs.push_back(where + ": no multiplicities");
      continue;
    }
    Int sum = 0;
    for (std::size_t i = 0; i < p.mults.size(); ++i) {
      if (p.mults[i] < 1) errs.push_back(where + " mult[" + std::to_string(i) + "]: multiplicity < 1");
      sum += p.mults[i];
    }
    if (sum != data.r) {
      errs.push_back(where + ": multiplicities sum to " + std::to_string(sum) + ", rank is " +
                     std::to_string(data.r));
    }
    if (p.weights) {
      auto w = weight_violations(p.id, p.mults.size(), *p.weights);
      errs.insert(errs.end(), w.begin(), w.end());
    }
  }
  return errs;
}

inline void require_valid(const ParabolicData& data) {
  auto errs = validate(data);
  if (errs.empty()) return;
  std::string msg;
  for (const auto& e : errs) msg += (msg.empty() ? "" : "; ") + e;
  throw InputError(msg);
}

/// Weight-multiplicity sum Σ_p Σ_i m_i(p) α_i(p) for an explicit weight vector.
inline Rational weight_sum(const ParabolicData& data, const Weights& w) {
  Rational s;
  for (std::size_t p = 0; p < data.n(); ++p) {
    for (std::size_t i = 0; i < data.points[p].mults.size(); ++i) {
      s += Rational(data.points[p].mults[i]) * w[p][i];
    }
  }
  return s;
}

inline Rational pardeg(const ParabolicData& data) {
  return Rational(data.d) + weight_sum(data, weights_of(data));
}

inline Rational slope(const ParabolicData& data) { return pardeg(data) / Rational(data.r); }

inline ExpandedWeight expand_weights(const ParabolicData& data) {
  ExpandedWeight out;
  for (const auto& p : data.points) {
    if (!p.weights) throw InputError("point " + p.id + ": missing weights");
    std::vector<Rational> e;
    for (std::size_t i = 0; i < p.mults.size(); ++i) {
      e.insert(e.end(), static_cast<std::size_t>(p.mults[i]), (*p.weights)[i]);
    }
    out.push_back(std::move(e));
  }
  return out;
}

/// Inverse of expand_weights at a single point. Fails unless the runs of equal
/// values are exactly the multiplicity blocks.
inline std::vector<Rational> compress_weights(const std::vector<Rational>& expanded,
                                              const std::vector<Int>& mults) {
  Int total = std::accumulate(mults.begin(), mults.end(), Int{0});
  if (total != static_cast<Int>(expanded.size())) {
    throw InputError("expanded weight length does not match multiplicities");
  }
  std::vector<Rational> out;
  std::size_t pos = 0;
  for (Int m : mults) {
    const Rational& level = expanded[pos];
    for (Int j = 0; j < m; ++j, ++pos) {
      if (expanded[pos] != level) throw InputError("equality pattern does not match multiplicity blocks");
    }
    if (!out.empty() && !(out.back() < level)) {
      throw InputError("equality pattern does not match multiplicity blocks");
    }
    out.push_back(level);
  }
  return out;
}

inline std::vector<std::string> subtype_violations(const ParabolicData& data, const SubType& xi) {
  std::vector<std::string> errs;
  if (xi.rPrime < 1 || xi.rPrime >= data.r) errs.emplace_back("sub-rank must satisfy 1 <= r' < r");
  if (xi.mPrime.size() != data.n()) {
    errs.emplace_back("sub-multiplicities have wrong number of points");
    return errs;
  }
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& m = data.points[p].mults;
    const auto& mp = xi.mPrime[p];
    const std::string where = "point " + data.points[p].id;
    if (mp.size() != m.size()) {
      errs.push_back(where + ": sub-multiplicities have wrong length");
      continue;
    }
    Int sum = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (mp[i] < 0 || mp[i] > m[i]) errs.push_back(where + ": need 0 <= m'_i <= m_i");
      sum += mp[i];
    }
    if (sum != xi.rPrime) errs.push_back(where + ": sub-multiplicities do not sum to r'");
  }
  return errs;
}

inline void require_valid(const ParabolicData& data, const SubType& xi) {
  auto errs = subtype_violations(data, xi);
  if (!errs.empty()) throw InputError(errs.front());
}

/// Quotient type (d - d', r - r', m - m'), in the same SubType shape.
inline SubType induced_quotient_type(const ParabolicData& data, const SubType& xi) {
  require_valid(data, xi);
  SubType q{data.d - xi.dPrime, data.r - xi.rPrime, {}};
  for (std::size_t p = 0; p < data.n(); ++p) {
    std::vector<Int> mq;
    for (std::size_t i = 0; i < data.points[p].mults.size(); ++i) {
      mq.push_back(data.points[p].mults[i] - xi.mPrime[p][i]);
    }
    q.mPrime.push_back(std::move(mq));
  }
  return q;
}

inline Int gcd_of(const std::vector<Int>& values) {
  Int g = 0;
  for (Int v : values) g = std::gcd(g, v);
  return g;
}

/// All vectors v with 0 <= v_i <= caps_i and Σ v_i = total, in lexicographic order.
inline std::vector<std::vector<Int>> bounded_compositions(Int total, const std::vector<Int>& caps) {
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur(caps.size(), 0);
  std::vector<Int> suffix(caps.size() + 1, 0);
  for (std::size_t i = caps.size(); i-- > 0;) suffix[i] = suffix[i + 1] + caps[i];
  auto rec = [&](auto&& self, std::size_t i, Int left) -> void {
    if (i == caps.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    Int lo = std::max<Int>(0, left - suffix[i + 1]);
    Int hi = std::min(caps[i], left);
    for (Int v = lo; v <= hi; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  if (total >= 0 && total <= suffix[0]) rec(rec, 0, total);
  return out;
}

/// All compositions of n (ordered lists of positive integers summing to n).
inline std::vector<std::vector<Int>> compositions(Int n) {
  std::vector<std::vector<Int>> out;
  if (n < 1) return out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<Int> c;
    Int run = 1;
    for (Int i = 0; i < n - 1; ++i) {
      if (mask & (std::uint64_t{1} << i)) {
        c.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    c.push_back(run);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace parabolic
