#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "parabolic/core.hpp"

namespace parabolic::testing {

inline Rational Q(const char* s) { return Rational::parse(s); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(Rational::parse(x));
  return out;
}

inline MarkedPoint pt(std::string id, std::vector<Int> mults) { return MarkedPoint{std::move(id), std::move(mults), std::nullopt}; }

inline MarkedPoint pt(std::string id, std::vector<Int> mults, std::initializer_list<const char*> w) {
  return MarkedPoint{std::move(id), std::move(mults), Qs(w)};
}

/// Random composition of r into positive parts.
inline std::vector<Int> random_composition(std::mt19937_64& rng, Int r) {
  std::vector<Int> out;
  Int run = 1;
  std::bernoulli_distribution cut(0.5);
  for (Int i = 1; i < r; ++i) {
    if (cut(rng)) {
      out.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  out.push_back(run);
  return out;
}

/// Strictly increasing weights in (0,1) with the given denominator.
inline std::vector<Rational> random_weights(std::mt19937_64& rng, std::size_t k, long den) {
  std::uniform_int_distribution<long> dist(1, den - 1);
  std::vector<long> v;
  while (v.size() < k) {
    long x = dist(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  std::sort(v.begin(), v.end());
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x, den);
  return out;
}

/// Random valid data with weights; up to maxPoints points named p0, p1, ...
inline ParabolicData random_instance(std::mt19937_64& rng, Int maxG, Int minR, Int maxR, std::size_t maxPoints, Int maxAbsD,
                                 long den = 997) {
  std::uniform_int_distribution<Int> g(2, maxG), r(minR, maxR), d(-maxAbsD, maxAbsD);
  std::uniform_int_distribution<std::size_t> n(1, maxPoints);
  ParabolicData data{g(rng), r(rng), d(rng), {}};
  const std::size_t count = n(rng);
  for (std::size_t p = 0; p < count; ++p) {
    auto m = random_composition(rng, data.r);
    auto w = random_weights(rng, m.size(), den);
    data.points.push_back(MarkedPoint{"p" + std::to_string(p), m, w});
  }
  return data;
}

}  // namespace parabolic::testing

#include <optional>

#include "parabolic/weightspace.hpp"

namespace parabolic::testing {

struct WallInstance {
  ParabolicData data;  // no weights attached
  SubType xi;
  Weights gamma;       // on the wall of xi and on no other hyperplane
};

/// A random feasible wall with a weight lying on it alone, or nullopt when the
/// drawn data has no usable wall.
inline std::optional<WallInstance> random_wall_instance(std::mt19937_64& rng, Int maxG, Int maxR, std::size_t maxPoints) {
  auto data = without_weights(random_instance(rng, maxG, 2, maxR, maxPoints, 2 * maxR));
  auto walls = enumerate_walls(data);
  if (walls.empty()) return std::nullopt;
  const auto& wall = walls[std::uniform_int_distribution<std::size_t>(0, walls.size() - 1)(rng)];
  const auto& xi = wall.contributors[std::uniform_int_distribution<std::size_t>(0, wall.contributors.size() - 1)(rng)];
  auto base = wall_point(wall);
  if (!base) return std::nullopt;
  const auto own = detail::hyperplane_key(wall.coeffs, wall.rhs);
  auto on_this_wall_only = [&](const Weights& w) {
    for (std::size_t p = 0; p < data.n(); ++p) {
      if (!weight_violations(data.points[p].id, data.points[p].mults.size(), w[p]).empty()) return false;
    }
    for (const auto& other : walls_through(data, w)) {
      auto ow = wall_of(data, other);
      if (ow.degenerate || detail::hyperplane_key(ow.coeffs, ow.rhs) != own) return false;
    }
    return true;
  };
  std::uniform_int_distribution<long> coord(-50, 50);
  for (int attempt = 0; attempt < 20; ++attempt) {
    // random direction inside the hyperplane
    Weights u(data.n());
    Rational dot;
    std::pair<std::size_t, std::size_t> pivot{data.n(), 0};
    for (std::size_t p = 0; p < data.n(); ++p) {
      for (std::size_t i = 0; i < data.points[p].mults.size(); ++i) {
        u[p].emplace_back(coord(rng));
        dot += Rational(wall.coeffs[p][i]) * u[p][i];
        if (pivot.first == data.n() && wall.coeffs[p][i] != 0) pivot = {p, i};
      }
    }
    u[pivot.first][pivot.second] -= dot / Rational(wall.coeffs[pivot.first][pivot.second]);
    Rational tau(1, 1000);
    for (int halving = 0; halving < 30; ++halving, tau /= Rational(2)) {
      Weights g = *base;
      for (std::size_t p = 0; p < data.n(); ++p) {
        for (std::size_t i = 0; i < g[p].size(); ++i) g[p][i] += tau * u[p][i];
      }
      if (on_this_wall_only(g)) return WallInstance{data, xi, g};
    }
  }
  return std::nullopt;
}

}  // namespace parabolic::testing
