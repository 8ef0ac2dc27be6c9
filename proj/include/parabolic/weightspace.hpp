#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "parabolic/core.hpp"

namespace parabolic {

/**
 * @brief The hyperplane H_ξ where a subbundle of type ξ has the same
 * parabolic slope as the ambient bundle, restricted to the compatible face V_m.
 *
 * The equation is Σ_p Σ_i coeffs[p][i]·α_i(p) = rhs with
 * coeffs = r'·m_i(p) − r·m'_i(p) and rhs = r·d' − r'·d.
 */
struct Wall {
  SubType xi;
  std::vector<SubType> contributors;  // every ξ defining this hyperplane
  std::vector<std::vector<Int>> coeffs;
  Int rhs = 0;
  bool feasible = false;
  bool degenerate = false;

  /// Σ c·α − rhs. Positive means the subbundle of type xi has smaller slope.
  Rational value(const Weights& w) const {
    Rational s(-rhs);
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
      for (std::size_t i = 0; i < coeffs[p].size(); ++i) {
        if (coeffs[p][i] != 0) s += Rational(coeffs[p][i]) * w[p][i];
      }
    }
    return s;
  }
  bool contains(const Weights& w) const { return value(w).is_zero(); }
};

/// Signs of (functional − rhs) over enumerate_walls(), in that order.
using ChamberSignature = std::vector<int>;

namespace detail {

/// Image of one point's functional over {0 <= α_1 < ... < α_κ < 1}.
/// Endpoints are always integers.
struct ValueRange {
  Int lo = 0;
  Int hi = 0;
  bool loClosed = true;
  bool hiClosed = true;

  bool contains(Int v) const {
    return (v > lo || (v == lo && loClosed)) && (v < hi || (v == hi && hiClosed));
  }
};

// In gap coordinates δ_k = α_k − α_{k−1} the box becomes the simplex
// {δ_1 >= 0, δ_k > 0 (k >= 2), Σ δ < 1} and the functional is Σ δ_k·C_k with
// C_k the suffix sums of c. Its vertices map to 0 and the C_k.
inline std::vector<Int> suffix_sums(const std::vector<Int>& c) {
  std::vector<Int> s(c.size(), 0);
  Int acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) s[k] = (acc += c[k]);
  return s;
}

inline ValueRange point_range(const std::vector<Int>& c) {
  auto C = suffix_sums(c);
  ValueRange out;
  out.lo = std::min<Int>(0, *std::min_element(C.begin(), C.end()));
  out.hi = std::max<Int>(0, *std::max_element(C.begin(), C.end()));
  bool tailZero = std::all_of(C.begin() + 1, C.end(), [](Int v) { return v == 0; });
  out.loClosed = out.lo == 0 && tailZero;
  out.hiClosed = out.hi == 0 && tailZero;
  return out;
}

inline ValueRange total_range(const std::vector<std::vector<Int>>& coeffs) {
  ValueRange total;
  for (const auto& c : coeffs) {
    auto r = point_range(c);
    total.lo += r.lo;
    total.hi += r.hi;
    total.loClosed = total.loClosed && r.loClosed;
    total.hiClosed = total.hiClosed && r.hiClosed;
  }
  return total;
}

/// Compressed weights at one point with functional value exactly v.
inline std::vector<Rational> realize_point_value(const std::vector<Int>& c, const Rational& v) {
  const std::size_t k = c.size();
  auto C = suffix_sums(c);
  auto range = point_range(c);
  std::vector<Rational> delta(k, Rational(1, static_cast<long>(k + 1)));
  auto eval = [&](const std::vector<Rational>& dl) {
    Rational s;
    for (std::size_t j = 0; j < k; ++j) s += dl[j] * Rational(C[j]);
    return s;
  };
  if (range.lo == range.hi) {
    // functional vanishes identically
  } else if ((v == Rational(range.lo) && range.loClosed) || (v == Rational(range.hi) && range.hiClosed)) {
    delta[0] = Rational(0);  // the face α_1 = 0 carries value 0
  } else {
    Rational f0 = eval(delta);
    const bool up = v >= f0;
    const Int target = up ? range.hi : range.lo;
    std::vector<Rational> vertex(k, Rational(0));
    if (target != 0) {
      for (std::size_t j = 0; j < k; ++j) {
        if (C[j] == target) {
          vertex[j] = Rational(1);
          break;
        }
      }
    }
    if (Rational(target) != f0) {
      Rational t = (v - f0) / (Rational(target) - f0);
      for (std::size_t j = 0; j < k; ++j) delta[j] += t * (vertex[j] - delta[j]);
    }
  }
  std::vector<Rational> alpha(k);
  Rational acc;
  for (std::size_t j = 0; j < k; ++j) alpha[j] = (acc += delta[j]);
  return alpha;
}

/// For every point, the list of sub-multiplicity vectors m' with Σ m' = rPrime.
inline std::vector<std::vector<std::vector<Int>>> sub_choices(const ParabolicData& data, Int rPrime) {
  std::vector<std::vector<std::vector<Int>>> out;
  for (const auto& p : data.points) out.push_back(bounded_compositions(rPrime, p.mults));
  return out;
}

/// Calls fn(mPrime) for every combination of per-point choices.
template <typename Fn>
void for_each_product(const std::vector<std::vector<std::vector<Int>>>& choices, Fn&& fn) {
  for (const auto& c : choices) {
    if (c.empty()) return;
  }
  std::vector<std::size_t> idx(choices.size(), 0);
  std::vector<std::vector<Int>> cur(choices.size());
  while (true) {
    for (std::size_t p = 0; p < choices.size(); ++p) cur[p] = choices[p][idx[p]];
    fn(cur, idx);
    std::size_t p = 0;
    for (; p < choices.size(); ++p) {
      if (++idx[p] < choices[p].size()) break;
      idx[p] = 0;
    }
    if (p == choices.size()) return;
  }
}

inline std::vector<std::vector<Int>> coefficients(const ParabolicData& data, Int rPrime,
                                                  const std::vector<std::vector<Int>>& mPrime) {
  std::vector<std::vector<Int>> c(data.n());
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& m = data.points[p].mults;
    c[p].resize(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) c[p][i] = rPrime * m[i] - data.r * mPrime[p][i];
  }
  return c;
}

/// Primitive, sign-normalized (coeffs, rhs) identifying the hyperplane.
inline std::pair<std::vector<std::vector<Int>>, Int> hyperplane_key(std::vector<std::vector<Int>> c, Int rhs) {
  Int g = std::abs(rhs);
  int firstSign = 0;
  for (const auto& row : c) {
    for (Int v : row) {
      g = std::gcd(g, v);
      if (firstSign == 0 && v != 0) firstSign = v > 0 ? 1 : -1;
    }
  }
  if (firstSign == 0) firstSign = rhs >= 0 ? 1 : -1;
  if (g == 0) return {std::move(c), rhs};
  for (auto& row : c) {
    for (auto& v : row) v = v / g * firstSign;
  }
  return {std::move(c), rhs / g * firstSign};
}

}  // namespace detail

inline Wall wall_of(const ParabolicData& data, const SubType& xi) {
  require_valid(data, xi);
  Wall w;
  w.xi = xi;
  w.contributors = {xi};
  w.coeffs = detail::coefficients(data, xi.rPrime, xi.mPrime);
  w.rhs = data.r * xi.dPrime - xi.rPrime * data.d;
  bool allZero = std::all_of(w.coeffs.begin(), w.coeffs.end(), [](const auto& row) {
    return std::all_of(row.begin(), row.end(), [](Int v) { return v == 0; });
  });
  w.degenerate = allZero && w.rhs == 0;
  w.feasible = detail::total_range(w.coeffs).contains(w.rhs);
  return w;
}

/// An exact weight in H_ξ ∩ V_m, or nullopt when the wall is empty.
inline std::optional<Weights> wall_point(const Wall& wall) {
  if (!wall.feasible) return std::nullopt;
  const std::size_t n = wall.coeffs.size();
  std::vector<detail::ValueRange> ranges;
  std::vector<Rational> v(n);
  Rational sum;
  for (std::size_t p = 0; p < n; ++p) {
    ranges.push_back(detail::point_range(wall.coeffs[p]));
    v[p] = Rational(ranges[p].lo + ranges[p].hi) / Rational(2);
    sum += v[p];
  }
  Rational deficit = Rational(wall.rhs) - sum;
  if (!deficit.is_zero()) {
    const bool up = deficit.sign() > 0;
    Rational slack;
    for (std::size_t p = 0; p < n; ++p) slack += abs(Rational(up ? ranges[p].hi : ranges[p].lo) - v[p]);
    for (std::size_t p = 0; p < n; ++p) {
      Rational room = Rational(up ? ranges[p].hi : ranges[p].lo) - v[p];
      v[p] += abs(deficit) * room / slack;
    }
  }
  Weights w(n);
  for (std::size_t p = 0; p < n; ++p) w[p] = detail::realize_point_value(wall.coeffs[p], v[p]);
  if (!wall.contains(w)) throw IdentityViolation("constructed wall point misses its wall");
  return w;
}

/**
 * @brief All feasible, non-degenerate walls of V_m, one per hyperplane.
 *
 * Walls are sorted by their primitive (coeffs, rhs) key; each keeps every
 * contributing ξ, and its representative is the contributor with the
 * smallest r'.
 */
inline std::vector<Wall> enumerate_walls(const ParabolicData& data) {
  using Key = std::pair<std::vector<std::vector<Int>>, Int>;
  std::map<Key, Wall> byKey;
  for (Int rp = 1; rp < data.r; ++rp) {
    auto choices = detail::sub_choices(data, rp);
    detail::for_each_product(choices, [&](const std::vector<std::vector<Int>>& mp, const auto&) {
      auto c = detail::coefficients(data, rp, mp);
      auto range = detail::total_range(c);
      if (range.lo == range.hi) return;  // only degenerate or empty walls
      // rhs = r·d' − r'·d must land in the attainable range
      Int dLo = Rational(range.lo + rp * data.d, data.r).ceil();
      Int dHi = Rational(range.hi + rp * data.d, data.r).floor();
      for (Int dp = dLo; dp <= dHi; ++dp) {
        Int rhs = data.r * dp - rp * data.d;
        if (!range.contains(rhs)) continue;
        SubType xi{dp, rp, mp};
        auto key = detail::hyperplane_key(c, rhs);
        auto it = byKey.find(key);
        if (it == byKey.end()) {
          Wall w;
          w.xi = xi;
          w.contributors = {xi};
          w.coeffs = c;
          w.rhs = rhs;
          w.feasible = true;
          byKey.emplace(std::move(key), std::move(w));
        } else {
          it->second.contributors.push_back(xi);
        }
      }
    });
  }
  std::vector<Wall> out;
  out.reserve(byKey.size());
  for (auto& [key, w] : byKey) {
    std::sort(w.contributors.begin(), w.contributors.end(), [](const SubType& a, const SubType& b) {
      return std::tie(a.rPrime, a.dPrime, a.mPrime) < std::tie(b.rPrime, b.dPrime, b.mPrime);
    });
    if (!(w.contributors.front() == w.xi)) {
      w.xi = w.contributors.front();
      w.coeffs = detail::coefficients(data, w.xi.rPrime, w.xi.mPrime);
      w.rhs = data.r * w.xi.dPrime - w.xi.rPrime * data.d;
    }
    out.push_back(std::move(w));
  }
  return out;
}

/// Every ξ (degenerate ones included) whose hyperplane contains the weight w.
inline std::vector<SubType> walls_through(const ParabolicData& data, const Weights& w) {
  std::vector<SubType> out;
  // Σ c·α − rhs = r'(A + d) − r(Σ_p B_p + d') with A = Σ m α and B_p = Σ m' α at p.
  Rational a = weight_sum(data, w) + Rational(data.d);
  for (Int rp = 1; rp < data.r; ++rp) {
    auto choices = detail::sub_choices(data, rp);
    std::vector<std::vector<Rational>> partial(data.n());
    for (std::size_t p = 0; p < data.n(); ++p) {
      for (const auto& mp : choices[p]) {
        Rational b;
        for (std::size_t i = 0; i < mp.size(); ++i) {
          if (mp[i] != 0) b += Rational(mp[i]) * w[p][i];
        }
        partial[p].push_back(b);
      }
    }
    const Rational target = Rational(rp) * a / Rational(data.r);
    detail::for_each_product(choices, [&](const std::vector<std::vector<Int>>& mp, const auto& idx) {
      Rational b;
      for (std::size_t p = 0; p < idx.size(); ++p) b += partial[p][idx[p]];
      Rational dp = target - b;
      if (dp.is_integer()) out.push_back(SubType{dp.floor(), rp, mp});
    });
  }
  return out;
}

inline bool is_generic(const ParabolicData& data, const Weights& w) { return walls_through(data, w).empty(); }

inline bool is_generic(const ParabolicData& data) { return is_generic(data, weights_of(data)); }

inline ChamberSignature chamber_signature(const Weights& w, const std::vector<Wall>& walls) {
  ChamberSignature sig;
  sig.reserve(walls.size());
  for (const auto& wall : walls) sig.push_back(wall.value(w).sign());
  return sig;
}

inline ChamberSignature chamber_signature(const ParabolicData& data) {
  return chamber_signature(weights_of(data), enumerate_walls(data));
}

struct GenericityReport {
  bool value = false;
  Int gcd = 0;                     // gcd of {d, r} ∪ {m_i(p)}
  bool gcdCriterion = false;       // gcd == 1
  bool noDegenerateWall = false;   // no ξ with V_m ⊆ H_ξ
  std::optional<SubType> degenerateWitness;
  std::optional<Weights> witness;  // a generic weight when value is true
};

/// A deterministic, reproducible stream of weights strictly inside V_m.
class WeightSampler {
 public:
  explicit WeightSampler(std::uint64_t seed = 0x5eedULL) : rng_(seed) {}

  std::vector<Rational> point(std::size_t blocks, long denominator = 1000003) {
    std::uniform_int_distribution<long> dist(1, denominator - 1);
    std::vector<long> v;
    while (v.size() < blocks) {
      long x = dist(rng_);
      if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
    }
    std::sort(v.begin(), v.end());
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x, denominator);
    return out;
  }

  Weights weights(const ParabolicData& data, long denominator = 1000003) {
    Weights w;
    for (const auto& p : data.points) w.push_back(point(p.mults.size(), denominator));
    return w;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/**
 * @brief Decides whether V_m contains a generic weight, two ways.
 *
 * (a) gcd{d, m_i(p)} = 1; (b) no ξ has V_m ⊆ H_ξ. A degenerate ξ needs every
 * coefficient r'm_i − r m'_i and r d' − r' d to vanish, which pins m' and d'
 * for each r'. The two answers must agree; disagreement throws.
 */
inline GenericityReport has_generic_weight(const ParabolicData& data) {
  GenericityReport rep;
  std::vector<Int> values{data.d, data.r};
  for (const auto& p : data.points) values.insert(values.end(), p.mults.begin(), p.mults.end());
  rep.gcd = gcd_of(values);
  rep.gcdCriterion = rep.gcd == 1;

  rep.noDegenerateWall = true;
  for (Int rp = 1; rp < data.r && rep.noDegenerateWall; ++rp) {
    if ((rp * data.d) % data.r != 0) continue;
    SubType xi{rp * data.d / data.r, rp, {}};
    bool ok = true;
    for (const auto& p : data.points) {
      std::vector<Int> mp;
      for (Int m : p.mults) {
        if ((rp * m) % data.r != 0) ok = false;
        mp.push_back(rp * m / data.r);
      }
      xi.mPrime.push_back(std::move(mp));
    }
    if (!ok) continue;
    if (!wall_of(data, xi).degenerate) throw IdentityViolation("pinned sub-type is not degenerate");
    rep.noDegenerateWall = false;
    rep.degenerateWitness = xi;
  }
  if (rep.gcdCriterion != rep.noDegenerateWall) {
    throw IdentityViolation("gcd criterion disagrees with degenerate-wall search");
  }
  rep.value = rep.gcdCriterion;
  if (rep.value) {
    WeightSampler sampler;
    for (int attempt = 0; attempt < 1000 && !rep.witness; ++attempt) {
      auto w = sampler.weights(data);
      if (is_generic(data, w)) rep.witness = std::move(w);
    }
    if (!rep.witness) throw IdentityViolation("no generic weight found although one exists");
  }
  return rep;
}

struct Crossing {
  Wall wall;
  Rational t;             // crossing parameter in (0,1)
  std::size_t wallIndex;  // position in enumerate_walls()
};

inline Weights segment_point(const Weights& a, const Weights& b, const Rational& t) {
  Weights out(a.size());
  const Rational s = Rational(1) - t;
  for (std::size_t p = 0; p < a.size(); ++p) {
    for (std::size_t i = 0; i < a[p].size(); ++i) out[p].push_back(s * a[p][i] + t * b[p][i]);
  }
  return out;
}

/**
 * @brief Walls crossed by the segment (1−t)α + tβ, sorted by t then by wall
 * index. Walls meeting the segment at the same t are all reported.
 */
inline std::vector<Crossing> walls_on_segment(const ParabolicData& data, const Weights& alpha,
                                              const Weights& beta, const std::vector<Wall>& walls) {
  for (std::size_t p = 0; p < data.n(); ++p) {
    auto ea = weight_violations(data.points[p].id, data.points[p].mults.size(), alpha[p]);
    auto eb = weight_violations(data.points[p].id, data.points[p].mults.size(), beta[p]);
    if (!ea.empty()) throw InputError("start weight: " + ea.front());
    if (!eb.empty()) throw InputError("end weight: " + eb.front());
  }
  if (!is_generic(data, alpha)) throw InputError("start weight is not generic");
  if (!is_generic(data, beta)) throw InputError("end weight is not generic");
  std::vector<Crossing> out;
  for (std::size_t k = 0; k < walls.size(); ++k) {
    Rational fa = walls[k].value(alpha);
    Rational fb = walls[k].value(beta);
    if (fa.is_zero() && fb.is_zero()) throw InputError("segment lies inside a wall");
    if (fa.sign() * fb.sign() < 0) out.push_back({walls[k], fa / (fa - fb), k});
  }
  std::stable_sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    if (x.t != y.t) return x.t < y.t;
    return x.wallIndex < y.wallIndex;
  });
  return out;
}

inline std::vector<Crossing> walls_on_segment(const ParabolicData& data, const Weights& alpha,
                                              const Weights& beta) {
  return walls_on_segment(data, alpha, beta, enumerate_walls(data));
}

enum class FaceOrder { Refines, Coarsens, Equal, Incomparable };

inline const char* to_string(FaceOrder f) {
  switch (f) {
    case FaceOrder::Refines: return "refines";
    case FaceOrder::Coarsens: return "coarsens";
    case FaceOrder::Equal: return "equal";
    case FaceOrder::Incomparable: return "incomparable";
  }
  return "?";
}

namespace detail {
inline std::vector<Int> prefix_set(const std::vector<Int>& m) {
  std::vector<Int> s;
  Int acc = 0;
  for (Int v : m) s.push_back(acc += v);
  return s;
}
// Block merging keeps a subset of the partial sums.
inline bool merges_to(const std::vector<Int>& fine, const std::vector<Int>& coarse) {
  auto f = prefix_set(fine);
  auto c = prefix_set(coarse);
  return std::includes(f.begin(), f.end(), c.begin(), c.end());
}
}  // namespace detail

/// Compares multiplicity systems (one list per point, same rank at each point).
inline FaceOrder face_order(const std::vector<std::vector<Int>>& m, const std::vector<std::vector<Int>>& mOther) {
  if (m.size() != mOther.size()) throw InputError("multiplicity systems have different point counts");
  bool finer = true;
  bool coarser = true;
  for (std::size_t p = 0; p < m.size(); ++p) {
    Int a = std::accumulate(m[p].begin(), m[p].end(), Int{0});
    Int b = std::accumulate(mOther[p].begin(), mOther[p].end(), Int{0});
    if (a != b) throw InputError("multiplicity systems have different ranks");
    finer = finer && detail::merges_to(m[p], mOther[p]);
    coarser = coarser && detail::merges_to(mOther[p], m[p]);
  }
  if (finer && coarser) return FaceOrder::Equal;
  if (finer) return FaceOrder::Refines;
  if (coarser) return FaceOrder::Coarsens;
  return FaceOrder::Incomparable;
}

}  // namespace parabolic
