#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parabolic/core.hpp"
#include "parabolic/weightspace.hpp"

namespace parabolic {

/// ½(r² − Σ m_i²), the dimension of the partial flag variety of type m.
inline Int flag_dim(const std::vector<Int>& mults) {
  Int r = 0;
  Int sq = 0;
  for (Int m : mults) {
    r += m;
    sq += m * m;
  }
  return (r * r - sq) / 2;
}

/// (g−1)r² + 1 + Σ_p flag_dim(m(p)), minus g for fixed determinant.
inline Int moduli_dim(Int g, Int r, const std::vector<std::vector<Int>>& mults, bool fixedDet) {
  Int dim = (g - 1) * r * r + 1;
  for (const auto& m : mults) dim += flag_dim(m);
  return fixedDet ? dim - g : dim;
}

inline std::vector<std::vector<Int>> multiplicities(const ParabolicData& data) {
  std::vector<std::vector<Int>> out;
  for (const auto& p : data.points) out.push_back(p.mults);
  return out;
}

inline Int moduli_dim(const ParabolicData& data, bool fixedDet) {
  return moduli_dim(data.g, data.r, multiplicities(data), fixedDet);
}

/// Codimension of the strictly semistable stratum M_γ' × M_γ'' of type ξ.
inline Int codim_sigma(const ParabolicData& data, const SubType& xi) {
  auto q = induced_quotient_type(data, xi);
  const Int rr = xi.rPrime * q.rPrime;
  Int codim = 2 * rr * (data.g - 1) - 1;
  for (std::size_t p = 0; p < data.n(); ++p) {
    Int diag = 0;
    for (std::size_t i = 0; i < xi.mPrime[p].size(); ++i) diag += xi.mPrime[p][i] * q.mPrime[p][i];
    codim += rr - diag;
  }
  return codim;
}

/// Same codimension as dim M − dim M' − dim M'' (non-fixed determinant).
inline Int codim_sigma_by_dimensions(const ParabolicData& data, const SubType& xi) {
  auto q = induced_quotient_type(data, xi);
  return moduli_dim(data, false) - moduli_dim(data.g, xi.rPrime, xi.mPrime, false) -
         moduli_dim(data.g, q.rPrime, q.mPrime, false);
}

struct FlipData {
  Int eAlpha = 0;
  Int eBeta = 0;
  Int codimSigma = 0;
  Int chiQ = 0;
  Int chiQPrime = 0;

  friend bool operator==(const FlipData&, const FlipData&) = default;
};

/**
 * @brief Lengths of the skyscraper quotients Hom/ParHom in both directions.
 *
 * On the wall the sub and quotient inherit the ambient weight γ_i on each
 * block i. chiQ counts the block pairs (sub i, quotient j) with γ_i > γ_j,
 * i.e. those forbidden for ParHom(E', E''); chiQPrime is the reverse count.
 * This orientation is the one that pairs with the twist r''d' − r'd'' in e_α:
 * on the wall, e_α + 1 = r'r''(g−1) + Σ_pairs (γ_j − γ_i + [γ_i > γ_j]) and
 * every summand is non-negative.
 */
inline std::pair<Int, Int> chi_skyscrapers(const ParabolicData& data, const Weights& gamma, const SubType& xi) {
  require_valid(data, xi);
  if (!wall_of(data, xi).contains(gamma)) throw InputError("weight does not lie on the wall of the sub-type");
  auto q = induced_quotient_type(data, xi);
  Int chiQ = 0;
  Int chiQPrime = 0;
  Int closedForm = 0;
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& sub = xi.mPrime[p];
    const auto& quo = q.mPrime[p];
    const auto& w = gamma[p];
    Int tied = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[i] > w[j]) {
          chiQ += sub[i] * quo[j];
          chiQPrime += quo[i] * sub[j];
        } else if (w[i] == w[j]) {
          tied += sub[i] * quo[j];
        }
      }
    }
    closedForm += xi.rPrime * q.rPrime - tied;
  }
  if (chiQ + chiQPrime != closedForm) throw IdentityViolation("skyscraper counts disagree with closed form");
  return {chiQ, chiQPrime};
}

/// Flip exponents at a weight γ lying on the wall of ξ and on no other hyperplane.
inline FlipData flip_exponents(const ParabolicData& data, const SubType& xi, const Weights& gamma) {
  auto [chiQ, chiQPrime] = chi_skyscrapers(data, gamma, xi);
  const auto own = wall_of(data, xi);
  const auto ownKey = detail::hyperplane_key(own.coeffs, own.rhs);
  for (const auto& other : walls_through(data, gamma)) {
    auto w = wall_of(data, other);
    if (w.degenerate || detail::hyperplane_key(w.coeffs, w.rhs) != ownKey) {
      throw InputError("weight lies on more than one wall");
    }
  }
  auto q = induced_quotient_type(data, xi);
  const Int rr = xi.rPrime * q.rPrime;
  const Int twist = q.rPrime * xi.dPrime - xi.rPrime * q.dPrime;
  FlipData f;
  f.chiQ = chiQ;
  f.chiQPrime = chiQPrime;
  f.eAlpha = twist + rr * (data.g - 1) + chiQ - 1;
  f.eBeta = -twist + rr * (data.g - 1) + chiQPrime - 1;
  f.codimSigma = codim_sigma(data, xi);
  if (f.eAlpha + f.eBeta + 1 != f.codimSigma) throw IdentityViolation("e_alpha + e_beta + 1 != codim");
  if (f.codimSigma != codim_sigma_by_dimensions(data, xi)) throw IdentityViolation("codim formula disagrees with dimensions");
  if (f.eAlpha < -1 || f.eBeta < -1) throw IdentityViolation("negative projective fiber dimension");
  return f;
}

/// ε values are positive rationals or +∞ (empty infimum).
struct Epsilon {
  std::optional<Rational> value;

  bool unbounded() const { return !value.has_value(); }
  std::string str() const { return value ? value->str() : "inf"; }

  friend bool operator==(const Epsilon&, const Epsilon&) = default;
  friend bool operator<(const Epsilon& a, const Epsilon& b) {
    if (!a.value) return false;
    if (!b.value) return true;
    return *a.value < *b.value;
  }
};

/// inf { ±(d/r − d'/r') > 0 : 1 <= r' < r }. The extremal d' for each r' is
/// the nearest integer to r'd/r on the correct side.
inline Epsilon epsilon_pm(Int d, Int r, int sign) {
  if (r < 1) throw InputError("rank must be >= 1");
  Epsilon best;
  const Rational mu(d, r);
  for (Int rp = 1; rp < r; ++rp) {
    const Rational center = Rational(rp * d, r);
    for (Int dp = center.floor() - 1; dp <= center.ceil() + 1; ++dp) {
      Rational gap = (mu - Rational(dp, rp)) * Rational(sign);
      if (gap.sign() > 0 && (!best.value || gap < *best.value)) best.value = gap;
    }
  }
  return best;
}

/// min over k = 1..r of ε_±(d, k).
inline Epsilon epsilon(Int d, Int r) {
  if (r < 1) throw InputError("rank must be >= 1");
  Epsilon best;
  for (Int k = 1; k <= r; ++k) {
    for (int s : {1, -1}) {
      auto e = epsilon_pm(d, k, s);
      if (e < best) best = e;
    }
  }
  return best;
}

/// Σ m_i α_i < ε(d,r)/2, strictly. Above this threshold ordinary and parabolic
/// stability need not match.
inline bool small_weight_ok(const ParabolicData& data, const Weights& w) {
  auto e = epsilon(data.d, data.r);
  if (e.unbounded()) return true;
  return weight_sum(data, w) < *e.value / Rational(2);
}

inline bool small_weight_ok(const ParabolicData& data) { return small_weight_ok(data, weights_of(data)); }

/// h¹ of the extension bundle used for the rank-splitting argument.
inline Int ext_rank(Int g, Int rPrime, Int rDoublePrime) {
  if (g < 2 || rPrime < 1 || rDoublePrime < 1) throw InputError("ext_rank needs g >= 2 and positive ranks");
  return (2 * rPrime + rDoublePrime) * (g - 1) + rDoublePrime + 1;
}

/// Fixed-determinant dimension with one marked point of type (r−1, 1).
inline Int hyperplane_flag_dim(Int g, Int r) { return (r * r - 1) * (g - 1) + r - 1; }

/// Both sides of dim(M' × Gr) = dim M for the rank splitting r = r' + r''.
inline std::pair<Int, Int> split_dimensions(Int g, Int rPrime, Int rDoublePrime) {
  const Int n = ext_rank(g, rPrime, rDoublePrime);
  const Int lhs = hyperplane_flag_dim(g, rPrime) + rDoublePrime * (n - rDoublePrime);
  return {lhs, hyperplane_flag_dim(g, rPrime + rDoublePrime)};
}

/// χ of the twist by degree h of the ℓ-th filtration step:
/// d + r(1 − g − h) − Σ_p Σ_{i < ℓ_p} m_i(p). ℓ_p ranges over 1..κ_p+1.
inline Int chi_twist(const ParabolicData& data, const std::vector<Int>& ell, Int h) {
  if (ell.size() != data.n()) throw InputError("need one filtration index per point");
  Int chi = data.d + data.r * (1 - data.g - h);
  for (std::size_t p = 0; p < data.n(); ++p) {
    const auto& m = data.points[p].mults;
    if (ell[p] < 1 || ell[p] > static_cast<Int>(m.size()) + 1) throw InputError("filtration index out of range");
    for (Int i = 0; i + 1 < ell[p]; ++i) chi -= m[static_cast<std::size_t>(i)];
  }
  return chi;
}

/// Largest integer h with h < d/r − r·n − (2g − 2).
inline Int h1_twist_degree_window(const ParabolicData& data) {
  const Rational bound = Rational(data.d, data.r) - Rational(data.r * static_cast<Int>(data.n())) -
                         Rational(2 * data.g - 2);
  return bound.ceil() - 1;
}

}  // namespace parabolic
