#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "parabolic/invariants.hpp"
#include "parabolic/shift.hpp"
#include "parabolic/weightspace.hpp"

namespace parabolic {

struct HeckeCrossing {
  Wall wall;
  SubType xi;       // oriented: the subbundle slope is smaller on the incoming side
  Rational t;
  Weights onWall;   // the crossing point, on this wall only
  FlipData flip;
  Weights witness;  // generic weight in the chamber entered
};

/**
 * @brief Shift and wall-crossing steps linking full-flag moduli at degree d
 * (one marked point) with those at degree d − 1.
 */
struct HeckeChain {
  Int g = 2;
  Int r = 2;
  Int d = 0;
  Epsilon epsStart;
  Epsilon epsEnd;
  Weights startWeights;
  Rational eta;
  ParabolicData shifted;  // degree d − 1, carrying the shifted weights
  Weights endWeights;
  std::vector<HeckeCrossing> crossings;
  std::optional<Int> startFiberDim;  // full flag dimension when gcd(r,d) = 1
  std::optional<Int> endFiberDim;    // same for gcd(r,d−1) = 1
};

inline ParabolicData full_flag_data(Int g, Int r, Int d) {
  return make_data(g, r, d, {MarkedPoint{"p", std::vector<Int>(static_cast<std::size_t>(r), 1), std::nullopt}});
}

namespace detail {

/// Small full-flag weights k·ε/(r(r+2)), nudged along fixed directions with a
/// halving step until `accept` holds. Every candidate stays strictly
/// increasing with weight sum < ε/2.
inline Weights small_full_flag_weights(Int r, const Rational& eps, const std::function<bool(const Weights&)>& accept) {
  const Rational step = eps / Rational(r * (r + 2));
  std::vector<Rational> base;
  for (Int k = 1; k <= r; ++k) base.push_back(step * Rational(k));
  if (accept({base})) return {base};
  const std::vector<std::function<Rational(Int)>> directions{
      [r](Int k) { return Rational(k * k, r * r); },
      [r](Int k) { return Rational(k * k * k, r * r * r); },
      [](Int k) { return Rational(1, 1L << k); },
      [](Int k) { return Rational(1, k + 1); },
  };
  for (const auto& dir : directions) {
    Rational tau = step / Rational(4);
    for (int halving = 0; halving < 48; ++halving, tau /= Rational(2)) {
      std::vector<Rational> w;
      for (Int k = 1; k <= r; ++k) w.push_back(base[static_cast<std::size_t>(k - 1)] + tau * dir(k));
      if (accept({w})) return {w};
    }
  }
  throw IdentityViolation("no admissible small full-flag weight found");
}

inline bool distinct_parameters(const std::vector<Crossing>& xs) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (xs[i].t == xs[i - 1].t) return false;
  }
  return true;
}

}  // namespace detail

/// The contributor of `wall` whose functional is positive at `from`, smallest r' first.
inline SubType oriented_subtype(const ParabolicData& data, const Wall& wall, const Weights& from) {
  for (const auto& xi : wall.contributors) {
    if (wall_of(data, xi).value(from).sign() > 0) return xi;
  }
  throw IdentityViolation("no contributor is positive on the incoming side");
}

/// Re-derives the crossings of a chain from its stored endpoints.
inline std::vector<HeckeCrossing> chain_crossings(const ParabolicData& shifted, const Weights& from, const Weights& to) {
  auto xs = walls_on_segment(shifted, from, to);
  if (!detail::distinct_parameters(xs)) throw InputError("segment meets several walls at one point");
  std::vector<HeckeCrossing> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    HeckeCrossing c;
    c.wall = xs[i].wall;
    c.t = xs[i].t;
    c.onWall = segment_point(from, to, c.t);
    c.xi = oriented_subtype(shifted, c.wall, from);
    c.flip = flip_exponents(shifted, c.xi, c.onWall);
    c.witness = i + 1 < xs.size() ? segment_point(from, to, (c.t + xs[i + 1].t) / Rational(2)) : to;
    out.push_back(std::move(c));
  }
  return out;
}

inline HeckeChain build_chain(Int g, Int r, Int d) {
  if (g < 2) throw InputError("genus < 2");
  if (r < 2) throw InputError("Hecke chain needs rank >= 2");
  HeckeChain chain;
  chain.g = g;
  chain.r = r;
  chain.d = d;
  chain.epsStart = epsilon(d, r);
  chain.epsEnd = epsilon(d - 1, r);
  const auto start = full_flag_data(g, r, d);
  chain.startWeights = detail::small_full_flag_weights(r, *chain.epsStart.value, [&](const Weights& w) {
    return small_weight_ok(start, w) && is_generic(start, w);
  });
  const auto& a = chain.startWeights[0];
  chain.eta = (a[0] + a[1]) / Rational(2);
  chain.shifted = shift(with_weights(start, chain.startWeights), ShiftAmount{{chain.eta}});
  const Weights from = weights_of(chain.shifted);
  chain.endWeights = detail::small_full_flag_weights(r, *chain.epsEnd.value, [&](const Weights& w) {
    if (!small_weight_ok(chain.shifted, w) || !is_generic(chain.shifted, w)) return false;
    return detail::distinct_parameters(walls_on_segment(chain.shifted, from, w));
  });
  chain.crossings = chain_crossings(chain.shifted, from, chain.endWeights);
  if (std::gcd(r, d) == 1) chain.startFiberDim = r * (r - 1) / 2;
  if (std::gcd(r, d - 1) == 1) chain.endFiberDim = r * (r - 1) / 2;
  return chain;
}

}  // namespace parabolic
