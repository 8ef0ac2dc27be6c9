#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "parabolic/core.hpp"
#include "parabolic/hecke.hpp"
#include "parabolic/invariants.hpp"
#include "parabolic/oracle.hpp"
#include "parabolic/weightspace.hpp"

namespace parabolic::io {

using Json = nlohmann::json;

/// Input error carrying every problem found, for structured reporting.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> errors)
      : InputError(join(errors)), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errs) {
    std::string s;
    for (const auto& e : errs) s += (s.empty() ? "" : "; ") + e;
    return s;
  }
  std::vector<std::string> errors_;
};

struct Instance {
  ParabolicData data;
  bool fixedDet = true;
};

inline Rational parse_rational(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rational must be a string \"a/b\" or an integer");
}

inline Instance parse_instance(const Json& j) {
  std::vector<std::string> errs;
  Instance inst;
  if (!j.is_object()) throw ValidationError({"instance must be a JSON object"});
  auto get_int = [&](const char* key, Int& out) {
    if (!j.contains(key)) {
      errs.push_back(std::string("missing field \"") + key + "\"");
    } else if (!j.at(key).is_number_integer()) {
      errs.push_back(std::string("field \"") + key + "\" must be an integer");
    } else {
      out = j.at(key).get<Int>();
    }
  };
  get_int("g", inst.data.g);
  get_int("r", inst.data.r);
  get_int("d", inst.data.d);
  if (j.contains("points")) {
    const auto& pts = j.at("points");
    if (!pts.is_array()) {
      errs.emplace_back("field \"points\" must be an array");
    } else {
      for (std::size_t k = 0; k < pts.size(); ++k) {
        const auto& pj = pts[k];
        const std::string where = "points[" + std::to_string(k) + "]";
        MarkedPoint p;
        if (!pj.is_object() || !pj.contains("id") || !pj.at("id").is_string()) {
          errs.push_back(where + ": needs a string \"id\"");
          continue;
        }
        p.id = pj.at("id").get<std::string>();
        if (!pj.contains("mults") || !pj.at("mults").is_array()) {
          errs.push_back("point " + p.id + ": needs an array \"mults\"");
          continue;
        }
        for (const auto& m : pj.at("mults")) {
          if (!m.is_number_integer()) {
            errs.push_back("point " + p.id + ": multiplicities must be integers");
            break;
          }
          p.mults.push_back(m.get<Int>());
        }
        if (pj.contains("weights") && !pj.at("weights").is_null()) {
          std::vector<Rational> w;
          bool ok = true;
          for (const auto& x : pj.at("weights")) {
            try {
              w.push_back(parse_rational(x));
            } catch (const InputError& e) {
              errs.push_back("point " + p.id + ": " + e.what());
              ok = false;
            }
          }
          if (ok) p.weights = std::move(w);
        }
        inst.data.points.push_back(std::move(p));
      }
    }
  }
  if (j.contains("options")) {
    const auto& o = j.at("options");
    if (o.contains("fixedDet")) {
      if (!o.at("fixedDet").is_boolean()) {
        errs.emplace_back("options.fixedDet must be a boolean");
      } else {
        inst.fixedDet = o.at("fixedDet").get<bool>();
      }
    }
  }
  if (!errs.empty()) throw ValidationError(errs);
  sort_points(inst.data);
  auto more = validate(inst.data);
  if (!more.empty()) throw ValidationError(more);
  return inst;
}

inline Json rational_list(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

inline Json int_list(const std::vector<Int>& xs) { return Json(xs); }

/// Serializes back to an InstanceDocument that parse_instance accepts.
inline Json instance_json(const ParabolicData& data, bool fixedDet = true) {
  Json pts = Json::array();
  for (const auto& p : data.points) {
    Json pj{{"id", p.id}, {"mults", int_list(p.mults)}};
    if (p.weights) pj["weights"] = rational_list(*p.weights);
    pts.push_back(pj);
  }
  return Json{{"g", data.g}, {"r", data.r}, {"d", data.d}, {"points", pts}, {"options", {{"fixedDet", fixedDet}}}};
}

/// Per-point weights keyed by point id.
inline Json weights_json(const ParabolicData& data, const Weights& w) {
  Json o = Json::object();
  for (std::size_t p = 0; p < data.n(); ++p) o[data.points[p].id] = rational_list(w[p]);
  return o;
}

/// Reads weights for `data` from either an InstanceDocument (points[].weights)
/// or an object {"weights": {id: [...]}}.
inline Weights parse_weights_for(const ParabolicData& data, const Json& j) {
  std::map<std::string, std::vector<Rational>> byId;
  if (j.contains("points")) {
    for (const auto& pj : j.at("points")) {
      if (!pj.contains("id") || !pj.contains("weights")) throw InputError("every point needs an id and weights");
      std::vector<Rational> w;
      for (const auto& x : pj.at("weights")) w.push_back(parse_rational(x));
      byId[pj.at("id").get<std::string>()] = std::move(w);
    }
  } else if (j.contains("weights") && j.at("weights").is_object()) {
    for (const auto& [id, arr] : j.at("weights").items()) {
      std::vector<Rational> w;
      for (const auto& x : arr) w.push_back(parse_rational(x));
      byId[id] = std::move(w);
    }
  } else {
    throw InputError("weight document needs \"points\" or \"weights\"");
  }
  Weights out;
  std::vector<std::string> errs;
  for (const auto& p : data.points) {
    auto it = byId.find(p.id);
    if (it == byId.end()) {
      errs.push_back("point " + p.id + ": no weights given");
      continue;
    }
    auto v = weight_violations(p.id, p.mults.size(), it->second);
    errs.insert(errs.end(), v.begin(), v.end());
    out.push_back(it->second);
  }
  if (!errs.empty()) throw ValidationError(errs);
  return out;
}

inline Json subtype_json(const ParabolicData& data, const SubType& xi) {
  Json m = Json::object();
  for (std::size_t p = 0; p < data.n(); ++p) m[data.points[p].id] = int_list(xi.mPrime[p]);
  return Json{{"dPrime", xi.dPrime}, {"rPrime", xi.rPrime}, {"mPrime", m}};
}

inline Json wall_json(const ParabolicData& data, const Wall& w) {
  Json coeffs = Json::object();
  for (std::size_t p = 0; p < data.n(); ++p) coeffs[data.points[p].id] = int_list(w.coeffs[p]);
  Json contributors = Json::array();
  for (const auto& xi : w.contributors) contributors.push_back(subtype_json(data, xi));
  return Json{{"xi", subtype_json(data, w.xi)}, {"coeffs", coeffs},   {"rhs", w.rhs},
              {"feasible", w.feasible},         {"degenerate", w.degenerate}, {"contributors", contributors}};
}

inline Json flip_json(const FlipData& f) {
  return Json{{"eAlpha", f.eAlpha}, {"eBeta", f.eBeta}, {"codimSigma", f.codimSigma},
              {"chiQ", f.chiQ},     {"chiQPrime", f.chiQPrime}};
}

inline Json epsilon_json(const Epsilon& e) { return e.unbounded() ? Json("inf") : Json(e.value->str()); }

inline Json verdict_json(const Verdict& v) {
  Json trail = Json::array();
  for (const auto& rr : v.trail) {
    trail.push_back(Json{{"ruleId", rr.ruleId},
                         {"citation", rr.citation},
                         {"fired", rr.fired},
                         {"condition", rr.condition},
                         {"bindings", rr.bindings}});
  }
  Json out{{"conclusion", to_string(v.conclusion)},
           {"trail", trail},
           {"normalizedInput", Json{{"dModR", v.normalized.dModR}, {"mults", v.normalized.mults}}}};
  out["levelBound"] = v.levelBound ? Json(*v.levelBound) : Json(nullptr);
  return out;
}

inline Json chain_json(const HeckeChain& c) {
  const auto start = full_flag_data(c.g, c.r, c.d);
  Json xs = Json::array();
  for (const auto& x : c.crossings) {
    xs.push_back(Json{{"t", x.t.str()},
                      {"wall", wall_json(c.shifted, x.wall)},
                      {"xi", subtype_json(c.shifted, x.xi)},
                      {"onWall", weights_json(c.shifted, x.onWall)},
                      {"flip", flip_json(x.flip)},
                      {"witness", weights_json(c.shifted, x.witness)}});
  }
  auto opt = [](const std::optional<Int>& v) { return v ? Json(*v) : Json(nullptr); };
  return Json{{"g", c.g},
              {"r", c.r},
              {"d", c.d},
              {"epsilonStart", epsilon_json(c.epsStart)},
              {"epsilonEnd", epsilon_json(c.epsEnd)},
              {"startWeights", weights_json(start, c.startWeights)},
              {"eta", c.eta.str()},
              {"shifted", instance_json(c.shifted)},
              {"endWeights", weights_json(c.shifted, c.endWeights)},
              {"crossings", xs},
              {"startFiberDim", opt(c.startFiberDim)},
              {"endFiberDim", opt(c.endFiberDim)}};
}

}  // namespace parabolic::io
