#pragma once

#include <string>
#include <vector>

#include "parabolic/core.hpp"
#include "parabolic/weightspace.hpp"

namespace parabolic {

/// Per-point shift amounts η_p in [0,1], in the order of ParabolicData::points.
struct ShiftAmount {
  std::vector<Rational> eta;

  static ShiftAmount uniform(const ParabolicData& data, const Rational& value) {
    return ShiftAmount{std::vector<Rational>(data.n(), value)};
  }

  ShiftAmount complement() const {
    ShiftAmount out;
    for (const auto& e : eta) out.eta.push_back(Rational(1) - e);
    return out;
  }

  friend ShiftAmount operator+(const ShiftAmount& a, const ShiftAmount& b) {
    ShiftAmount out;
    for (std::size_t p = 0; p < a.eta.size(); ++p) out.eta.push_back(a.eta[p] + b.eta[p]);
    return out;
  }
  Rational total() const {
    Rational s;
    for (const auto& e : eta) s += e;
    return s;
  }
};

namespace detail {
inline void check_shift(const ParabolicData& data, const ShiftAmount& eta) {
  if (eta.eta.size() != data.n()) throw InputError("shift needs one amount per point");
  for (std::size_t p = 0; p < data.n(); ++p) {
    if (eta.eta[p].sign() < 0 || eta.eta[p] > Rational(1)) {
      throw InputError("point " + data.points[p].id + ": shift amount outside [0,1]");
    }
  }
}
}  // namespace detail

/// i_p = #{k : α_k(p) < η_p}, the number of blocks that wrap around.
inline std::vector<std::size_t> wrap_counts(const ParabolicData& data, const ShiftAmount& eta) {
  detail::check_shift(data, eta);
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& p_ = data.points[p];
    if (!p_.weights) throw InputError("point " + p_.id + ": missing weights");
    std::size_t i = 0;
    while (i < p_.weights->size() && (*p_.weights)[i] < eta.eta[p]) ++i;
    out.push_back(i);
  }
  return out;
}

/**
 * @brief Shift of the weighted filtration, E[η]_x = E_{x+η}.
 *
 * At each point the first i_p blocks wrap to the top with weight 1 + α − η,
 * the rest move down by η, multiplicities rotate the same way, and the degree
 * drops by the wrapped multiplicity. A weight equal to η lands on 0.
 */
inline ParabolicData shift(const ParabolicData& data, const ShiftAmount& eta) {
  auto wraps = wrap_counts(data, eta);
  ParabolicData out = data;
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& src = data.points[p];
    const auto& w = *src.weights;
    const std::size_t k = src.mults.size();
    const std::size_t i = wraps[p];
    std::vector<Int> mults;
    std::vector<Rational> weights;
    for (std::size_t j = i; j < k; ++j) {
      mults.push_back(src.mults[j]);
      weights.push_back(w[j] - eta.eta[p]);
    }
    for (std::size_t j = 0; j < i; ++j) {
      mults.push_back(src.mults[j]);
      weights.push_back(Rational(1) + w[j] - eta.eta[p]);
      out.d -= src.mults[j];
    }
    out.points[p].mults = std::move(mults);
    out.points[p].weights = std::move(weights);
  }
  require_valid(out);
  return out;
}

/// shift(shift(x, η1), η2) == shift(x, η1 + η2), for η1 + η2 <= 1.
inline bool shift_compose_check(const ParabolicData& data, const ShiftAmount& a, const ShiftAmount& b) {
  auto both = a + b;
  detail::check_shift(data, both);
  return shift(shift(data, a), b) == shift(data, both);
}

/// Verifies pardeg(shift(x, η)) = pardeg(x) − r·Σ_p η_p and returns the new pardeg.
inline Rational slope_shift_law(const ParabolicData& data, const ShiftAmount& eta) {
  const Rational after = pardeg(shift(data, eta));
  if (after != pardeg(data) - Rational(data.r) * eta.total()) {
    throw IdentityViolation("parabolic degree does not drop by r * sum(eta)");
  }
  return after;
}

/// (0, γ_2, ..., γ_n) ↦ (γ_2, ..., γ_n, 1): identifies the α_1 = 0 face of one
/// weight simplex with the α_n = 1 face of the next.
inline std::vector<Rational> glue_coordinates(const std::vector<Rational>& expanded) {
  if (expanded.empty() || !expanded.front().is_zero()) throw InputError("first coordinate must be 0");
  std::vector<Rational> out(expanded.begin() + 1, expanded.end());
  out.emplace_back(1);
  return out;
}

inline std::vector<Rational> unglue_coordinates(const std::vector<Rational>& glued) {
  if (glued.empty() || glued.back() != Rational(1)) throw InputError("last coordinate must be 1");
  std::vector<Rational> out{Rational(0)};
  out.insert(out.end(), glued.begin(), glued.end() - 1);
  return out;
}

/// The sub-type on the shifted data whose wall is the image of ξ's wall.
inline SubType shift_wall_transport(const ParabolicData& data, const ShiftAmount& eta, const SubType& xi) {
  require_valid(data, xi);
  auto wraps = wrap_counts(data, eta);
  SubType out{xi.dPrime, xi.rPrime, {}};
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& mp = xi.mPrime[p];
    const std::size_t i = wraps[p];
    std::vector<Int> rotated(mp.begin() + static_cast<std::ptrdiff_t>(i), mp.end());
    rotated.insert(rotated.end(), mp.begin(), mp.begin() + static_cast<std::ptrdiff_t>(i));
    for (std::size_t j = 0; j < i; ++j) out.dPrime -= mp[j];
    out.mPrime.push_back(std::move(rotated));
  }
  return out;
}

}  // namespace parabolic
