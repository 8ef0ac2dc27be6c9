// parabolic: command-line front end for the parabolic moduli invariants library.
//
// Exit codes: 0 success (including "unknown" verdicts), 2 input error,
// 3 internal identity violation.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parabolic/hecke.hpp"
#include "parabolic/invariants.hpp"
#include "parabolic/io.hpp"
#include "parabolic/oracle.hpp"
#include "parabolic/shift.hpp"
#include "parabolic/weightspace.hpp"

namespace {

using parabolic::Int;
using parabolic::Rational;
using parabolic::io::Json;
namespace pio = parabolic::io;

constexpr const char* kToolVersion = "parabolic 0.1.0";

Json read_json_file(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) throw parabolic::InputError("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw parabolic::InputError(std::string("malformed JSON in ") + path + ": " + e.what());
  }
}

void render_text(std::ostream& os, const Json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      if (v.is_structured() && !v.empty() && !(v.is_array() && !v.front().is_structured())) {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      } else {
        os << pad << k << std::string(width - k.size(), ' ') << "  " << (v.is_string() ? v.get<std::string>() : v.dump())
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (j[i].is_structured()) {
        os << pad << "[" << i << "]\n";
        render_text(os, j[i], indent + 2);
      } else {
        os << pad << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump()) << "\n";
      }
    }
  } else {
    os << pad << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

struct Options {
  std::vector<std::string> instances;
  std::string format = "json";
  Int gmax = 100;
  Int r = 0;
  Int d = 0;
  Int g = 2;
  std::string eta;
  std::string to;
};

parabolic::ShiftAmount parse_eta(const parabolic::ParabolicData& data, const std::string& text) {
  std::optional<Rational> global;
  std::map<std::string, Rational> perPoint;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (global) throw parabolic::InputError("--eta has more than one global amount");
      global = Rational::parse(tok);
    } else {
      perPoint[tok.substr(0, eq)] = Rational::parse(tok.substr(eq + 1));
    }
  }
  parabolic::ShiftAmount out;
  for (const auto& p : data.points) {
    auto it = perPoint.find(p.id);
    if (it != perPoint.end()) {
      out.eta.push_back(it->second);
      perPoint.erase(it);
    } else if (global) {
      out.eta.push_back(*global);
    } else {
      throw parabolic::InputError("--eta gives no amount for point " + p.id);
    }
  }
  if (!perPoint.empty()) throw parabolic::InputError("--eta names unknown point " + perPoint.begin()->first);
  return out;
}

Json walls_result(const pio::Instance& inst) {
  Json out = Json::array();
  for (const auto& w : parabolic::enumerate_walls(inst.data)) out.push_back(pio::wall_json(inst.data, w));
  return out;
}

Json dim_result(const pio::Instance& inst) {
  Json flags = Json::object();
  for (const auto& p : inst.data.points) flags[p.id] = parabolic::flag_dim(p.mults);
  return Json{{"dimension", parabolic::moduli_dim(inst.data, inst.fixedDet)},
              {"fixedDet", inst.fixedDet},
              {"flagDims", flags}};
}

Json generic_result(const pio::Instance& inst) {
  auto rep = parabolic::has_generic_weight(inst.data);
  Json out{{"hasGenericWeight", rep.value},
           {"gcd", rep.gcd},
           {"gcdCriterion", rep.gcdCriterion},
           {"noDegenerateWall", rep.noDegenerateWall}};
  out["witness"] = rep.witness ? pio::weights_json(inst.data, *rep.witness) : Json(nullptr);
  out["degenerateSubType"] =
      rep.degenerateWitness ? pio::subtype_json(inst.data, *rep.degenerateWitness) : Json(nullptr);
  if (inst.data.has_weights() && !inst.data.points.empty()) {
    out["isGeneric"] = parabolic::is_generic(inst.data);
    out["smallWeight"] = parabolic::small_weight_ok(inst.data);
    Json sig = Json::array();
    for (int s : parabolic::chamber_signature(inst.data)) sig.push_back(s);
    out["signature"] = sig;
  }
  return out;
}

Json cross_result(const pio::Instance& inst, const Json& toDoc) {
  const auto from = parabolic::weights_of(inst.data);
  const auto to = pio::parse_weights_for(inst.data, toDoc);
  auto xs = parabolic::walls_on_segment(inst.data, from, to);
  Json out = Json::array();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& x = xs[i];
    bool shared = (i > 0 && xs[i - 1].t == x.t) || (i + 1 < xs.size() && xs[i + 1].t == x.t);
    Json e{{"t", x.t.str()}, {"wall", pio::wall_json(inst.data, x.wall)}, {"simultaneous", shared}};
    if (!shared) {
      auto gamma = parabolic::segment_point(from, to, x.t);
      auto xi = parabolic::oriented_subtype(inst.data, x.wall, from);
      e["xi"] = pio::subtype_json(inst.data, xi);
      e["onWall"] = pio::weights_json(inst.data, gamma);
      e["flip"] = pio::flip_json(parabolic::flip_exponents(inst.data, xi, gamma));
    }
    out.push_back(e);
  }
  return out;
}

Json report(const std::string& command, const Json& input, const Json& result) {
  Json cites = Json::object();
  if (command == "rationality" || command == "open-genera") {
    for (const auto& [id, text] : parabolic::rule_citations()) cites[id] = text;
  }
  return Json{{"command", command}, {"input", input}, {"result", result}, {"toolVersion", kToolVersion},
              {"citations", cites}};
}

void emit(const Options& opt, const Json& doc) {
  if (opt.format == "text") {
    render_text(std::cout, doc.contains("result") ? doc.at("result") : doc);
  } else {
    std::cout << doc.dump(2) << "\n";
  }
}

std::vector<pio::Instance> load_instances(const Options& opt) {
  std::vector<std::string> paths = opt.instances.empty() ? std::vector<std::string>{"-"} : opt.instances;
  std::vector<pio::Instance> out;
  for (const auto& path : paths) out.push_back(pio::parse_instance(read_json_file(path)));
  return out;
}

/// Runs `fn` over every instance; several instances produce an array of reports.
template <typename Fn>
void per_instance(const Options& opt, const std::string& command, Fn&& fn) {
  auto instances = load_instances(opt);
  Json reports = Json::array();
  for (const auto& inst : instances) {
    reports.push_back(report(command, pio::instance_json(inst.data, inst.fixedDet), fn(inst)));
  }
  emit(opt, reports.size() == 1 ? reports[0] : reports);
}

int run(int argc, char** argv) {
  CLI::App app{"Exact invariants of moduli of parabolic bundles"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "json (default) or text")->check(CLI::IsMember({"json", "text"}));

  auto with_instance = [&](CLI::App* sub) {
    sub->add_option("--instance", opt.instances, "InstanceDocument JSON file (repeatable; default stdin)");
    sub->add_option("--format", opt.format, "json (default) or text")->check(CLI::IsMember({"json", "text"}));
    return sub;
  };
  auto* walls = with_instance(app.add_subcommand("walls", "list the walls of the compatible weight face"));
  auto* rationality = with_instance(app.add_subcommand("rationality", "rationality verdict (fixed determinant)"));
  auto* dim = with_instance(app.add_subcommand("dim", "moduli space dimension"));
  auto* generic = with_instance(app.add_subcommand("generic", "generic-weight existence and genericity"));
  auto* shiftCmd = with_instance(app.add_subcommand("shift", "shift the weighted filtration"));
  shiftCmd->add_option("--eta", opt.eta, "a/b[,point=a/b...]")->required();
  auto* cross = with_instance(app.add_subcommand("cross", "walls crossed on the segment to a second weight"));
  cross->add_option("--to", opt.to, "file with the second weight set")->required();

  auto* openGenera = app.add_subcommand("open-genera", "genera where rationality is not decided");
  openGenera->add_option("--r", opt.r)->required();
  openGenera->add_option("--d", opt.d)->required();
  openGenera->add_option("--gmax", opt.gmax)->required();
  openGenera->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  auto* eps = app.add_subcommand("epsilon", "minimal slope gap eps(d,r)");
  eps->add_option("--d", opt.d)->required();
  eps->add_option("--r", opt.r)->required();
  eps->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
  auto* hecke = app.add_subcommand("hecke", "Hecke chain from degree d to d-1, one full-flag point");
  hecke->add_option("--g", opt.g)->required();
  hecke->add_option("--r", opt.r)->required();
  hecke->add_option("--d", opt.d)->required();
  hecke->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (walls->parsed()) {
    per_instance(opt, "walls", walls_result);
  } else if (rationality->parsed()) {
    per_instance(opt, "rationality", [](const pio::Instance& inst) {
      if (!inst.fixedDet) throw parabolic::InputError("rationality verdicts require fixedDet = true");
      return pio::verdict_json(parabolic::decide(inst.data));
    });
  } else if (dim->parsed()) {
    per_instance(opt, "dim", dim_result);
  } else if (generic->parsed()) {
    per_instance(opt, "generic", generic_result);
  } else if (shiftCmd->parsed()) {
    auto instances = load_instances(opt);
    Json docs = Json::array();
    for (const auto& inst : instances) {
      auto shifted = parabolic::shift(inst.data, parse_eta(inst.data, opt.eta));
      docs.push_back(pio::instance_json(shifted, inst.fixedDet));
    }
    emit(opt, docs.size() == 1 ? docs[0] : docs);
  } else if (cross->parsed()) {
    const Json toDoc = read_json_file(opt.to);
    per_instance(opt, "cross", [&](const pio::Instance& inst) { return cross_result(inst, toDoc); });
  } else if (openGenera->parsed()) {
    auto gs = parabolic::open_genera(opt.r, opt.d, opt.gmax);
    emit(opt, report("open-genera", Json{{"r", opt.r}, {"d", opt.d}, {"gmax", opt.gmax}}, Json(gs)));
  } else if (eps->parsed()) {
    Json result{{"epsilon", pio::epsilon_json(parabolic::epsilon(opt.d, opt.r))},
                {"epsilonPlus", pio::epsilon_json(parabolic::epsilon_pm(opt.d, opt.r, 1))},
                {"epsilonMinus", pio::epsilon_json(parabolic::epsilon_pm(opt.d, opt.r, -1))}};
    emit(opt, report("epsilon", Json{{"d", opt.d}, {"r", opt.r}}, result));
  } else if (hecke->parsed()) {
    auto chain = parabolic::build_chain(opt.g, opt.r, opt.d);
    emit(opt, report("hecke", Json{{"g", opt.g}, {"r", opt.r}, {"d", opt.d}}, pio::chain_json(chain)));
  }
  return 0;
}

void print_errors(const std::vector<std::string>& errors) {
  std::cerr << Json{{"errors", errors}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pio::ValidationError& e) {
    print_errors(e.errors());
    return 2;
  } catch (const parabolic::InputError& e) {
    print_errors({e.what()});
    return 2;
  } catch (const parabolic::IdentityViolation& e) {
    std::cerr << Json{{"internalError", e.what()}}.dump() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    print_errors({e.what()});
    return 2;
  }
}
