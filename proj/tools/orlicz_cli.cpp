// Command-line front end for the Orlicz laboratory.
//
// Exit codes: 0 success, 2 input error, 3 numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "orlicz/compactness.hpp"
#include "orlicz/conjugate.hpp"
#include "orlicz/delta.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/io.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/norms.hpp"

namespace {

using namespace orlicz;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

struct RunConfig {
  std::string function;
  std::string spec;
  std::string target;
  std::string family;
  std::string mode = "equi";
  std::string sets = "tail";
  std::string format = "json";
  std::string out;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-12;
  std::size_t trials = 1000;
  std::size_t count = 12;
  std::size_t n = 0;
  std::size_t probes = 32;
};

// A descriptor argument naming an existing file is replaced by the file contents.
std::string descriptor_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return read_text_file(arg);
  return arg;
}

OrliczFunction function_arg(const std::string& arg) {
  if (arg.empty()) throw InputError("--function is required");
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) {
    const std::string text = read_text_file(arg);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '"')) {
      return load_table_csv(arg);
    }
    return function_from_json(Json::parse(text));
  }
  return parse_function(arg);
}

NormSpec spec_arg(const std::string& arg) {
  if (arg.empty()) throw InputError("--spec is required");
  return parse_norm_spec(descriptor_text(arg));
}

// path,value rows for every leaf of a JSON document.
void flatten(const Json& j, const std::string& path, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, os);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", os);
  } else {
    os << path << ',' << j.dump() << '\n';
  }
}

std::string render(const Json& j, const std::string& format) {
  if (format == "csv") {
    std::ostringstream os;
    os << "field,value\n";
    flatten(j, "", os);
    return os.str();
  }
  return j.dump(2) + "\n";
}

void emit(const std::string& text, const RunConfig& cfg) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out) throw InputError("cannot write '" + cfg.out + "'");
  out << text;
}

Json catalog_listing() {
  struct Row {
    const char* name;
    const char* formula;
    const char* params;
    const char* conjugate;
  };
  const Row rows[] = {
      {"power", "u^p", "p > 1", "(p-1) p^{-p'} u^{p'} with 1/p + 1/p' = 1"},
      {"example55", "u^2/2 on [0,1], u ln u + 1/2 beyond", "",
       "u^2/2 on [0,1], e^{u-1} - 1/2 beyond"},
      {"phi_r", "u ln^r(1+u)", "r > 0", "numeric"},
      {"phi_a", "u sqrt(1 + a ln(1+u))", "a > 0", "numeric"},
      {"phi_b", "u exp(sqrt(1 + b ln+ u))", "b > 0", "numeric"},
      {"linear_spliced", "u on [0,1], u^2 beyond", "", "0 on [0,1], u - 1 on [1,2], u^2/4 beyond"},
      {"valle_poussin_sum", "sum_n (u - u_n)_+", "thresholds: u_1 = 0, nondecreasing",
       "infinite beyond the number of thresholds"},
  };
  Json list = Json::array();
  for (const auto& r : rows) {
    list.push_back({{"name", r.name}, {"formula", r.formula}, {"params", r.params},
                    {"conjugate", r.conjugate}});
  }
  return list;
}

int cmd_catalog(const RunConfig& cfg) {
  const Json list = catalog_listing();
  if (cfg.format == "json") {
    emit(list.dump(2) + "\n", cfg);
  } else {
    std::ostringstream os;
    os << "name,formula,params,conjugate\n";
    for (const auto& r : list) {
      os << r["name"].get<std::string>() << ",\"" << r["formula"].get<std::string>() << "\",\""
         << r["params"].get<std::string>() << "\",\"" << r["conjugate"].get<std::string>()
         << "\"\n";
    }
    emit(os.str(), cfg);
  }
  return 0;
}

int cmd_indices(const RunConfig& cfg) {
  const OrliczFunction phi = function_arg(cfg.function);
  Json j;
  j["function"] = phi.label();
  j["evidence"] = "numeric evidence";
  const IndexReport report = all_indices(phi);
  j["indices"] = to_json(report);
  if (phi.coercive()) {
    j["duality"] = to_json(index_duality_residual(phi));
  } else {
    j["duality"] = nullptr;
  }
  j["delta2_infinity"] = to_json(delta2_verdict(phi, default_delta_probes(phi, 2.0)));
  j["delta0"] = to_json(delta0_verdict(phi, 2.0, default_delta_probes(phi, 2.0)));
  j["simonenko_ratio_criterion"] = simonenko_ratio_criterion(phi);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "index,estimate,infinite,increasing\n";
    const std::pair<const char*, const std::optional<IndexValue>*> rows[] = {
        {"a_inf", &report.a_inf},
        {"alpha_inf", &report.alpha_inf},
        {"beta_inf", &report.beta_inf},
        {"b_inf", &report.b_inf}};
    for (const auto& [name, v] : rows) {
      os << name << ',' << Json((*v)->estimate).dump() << ',' << ((*v)->infinite ? "true" : "false")
         << ',' << ((*v)->increasing ? "true" : "false") << '\n';
    }
    emit(os.str(), cfg);
  } else {
    emit(j.dump(2) + "\n", cfg);
  }
  return 0;
}

int cmd_norm(const RunConfig& cfg) {
  if (cfg.function.empty()) throw InputError("--function (step function file) is required");
  const StepFunction f = load_step_function(cfg.function);
  const NormSpec spec = spec_arg(cfg.spec);
  double value = 0;
  if (const auto* o = std::get_if<OrliczNorm>(&spec.kind)) {
    value = luxemburg_norm(o->phi, f, cfg.tol);
  } else {
    value = norm(f, spec);
  }
  if (cfg.format == "csv") {
    std::ostringstream os;
    os.precision(17);
    os << "spec,value\n\"" << spec.label() << "\"," << value << '\n';
    emit(os.str(), cfg);
  } else {
    Json j{{"spec", to_json(spec)}, {"value", value}};
    emit(j.dump(2) + "\n", cfg);
  }
  return 0;
}

std::vector<BlockSet> family_sets(const Family& family, const std::string& kind) {
  if (kind == "tail") return tail_support_sets(family);
  if (kind == "halving") return halving_sets(family[0].size());
  if (kind == "suffix") return suffix_sets(family[0].size());
  throw InputError("--sets must be tail, halving or suffix");
}

Family family_arg(const RunConfig& cfg) {
  if (cfg.family.empty()) throw InputError("--family is required");
  std::error_code ec;
  if (std::filesystem::is_regular_file(cfg.family, ec)) return load_family(cfg.family);
  return parse_family(Json::parse(cfg.family));
}

int cmd_compactness(const RunConfig& cfg) {
  const NormSpec spec = spec_arg(cfg.spec);
  Json j;
  j["mode"] = cfg.mode;
  j["spec"] = to_json(spec);
  if (cfg.mode == "remark33") {
    const std::size_t n = cfg.n > 0 ? cfg.n : family_arg(cfg).size();
    const OrliczFunction phi = function_arg(cfg.function.empty() ? "power:p=2" : cfg.function);
    j["function"] = phi.label();
    j["n"] = n;
    const Remark33Report r = counterexample_remark_3_3(spec, phi, n);
    j["report"] = to_json(r);
    if (cfg.format == "csv") {
      emit(to_csv(r.equi_profile), cfg);
      return 0;
    }
    emit(render(j, cfg.format), cfg);
    return 0;
  }

  const Family family = family_arg(cfg);
  if (cfg.mode == "equi") {
    const auto sets = family_sets(family, cfg.sets);
    const DecayProfile p = equi_integrability_profile(family, spec, sets);
    if (cfg.format == "csv") {
      emit(to_csv(p), cfg);
      return 0;
    }
    j["sets"] = cfg.sets;
    j["profile"] = to_json(p);
  } else if (cfg.mode == "tail") {
    std::vector<double> gammas{0};
    for (const auto& f : family) {
      for (const auto& b : f.blocks()) gammas.push_back(std::fabs(b.value));
    }
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());
    const DecayProfile p = tail_profile(family, spec, gammas);
    if (cfg.format == "csv") {
      emit(to_csv(p), cfg);
      return 0;
    }
    j["profile"] = to_json(p);
  } else if (cfg.mode == "vp") {
    const auto u = valle_poussin_thresholds(family, spec, cfg.count);
    const OrliczFunction phi = valle_poussin_construct(u);
    j["function"] = to_json(*phi.catalog_entry());
    j["report"] = to_json(valle_poussin_verify(phi, family, spec));
  } else if (cfg.mode == "l1const") {
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["report"] = to_json(disjoint_l1_lower_constant(family, spec, cfg.trials, cfg.seed));
  } else if (cfg.mode == "case41") {
    double p = 2;
    if (const auto* l = std::get_if<LorentzP1Norm>(&spec.kind)) p = l->p;
    if (const auto* i = std::get_if<IntersectionNorm>(&spec.kind)) {
      if (const auto* l = std::get_if<LorentzP1Norm>(&i->first->kind)) p = l->p;
    }
    j["report"] = to_json(theorem41_case_split(family, p));
  } else {
    throw InputError("--mode must be equi, tail, vp, l1const, remark33 or case41");
  }
  emit(render(j, cfg.format), cfg);
  return 0;
}

int cmd_multiplier(const RunConfig& cfg) {
  if (cfg.function.empty()) throw InputError("--function (step function file) is required");
  const StepFunction f = load_step_function(cfg.function);
  const NormSpec x = spec_arg(cfg.spec);
  const NormSpec y = cfg.target.empty() ? x : spec_arg(cfg.target);
  ProbeOptions probes;
  probes.random_probes = cfg.probes;
  probes.seed = cfg.seed;
  const MultiplierReport r = multiplier_norm_estimate(f, x, y, probes);
  const auto sets = suffix_sets(f.size());
  const DecayProfile p = multiplier_oc_profile(f, x, y, sets, probes);
  Json j;
  j["x"] = to_json(x);
  j["y"] = to_json(y);
  j["seed"] = cfg.seed;
  j["estimate"] = to_json(r);
  j["oc_profile"] = to_json(p);
  emit(render(j, cfg.format), cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz functions, rearrangement-invariant norms and compactness probes"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "Output file (default: stdout)");
  };

  auto* catalog = app.add_subcommand("catalog", "List catalog Orlicz functions");
  add_common(catalog);

  auto* indices = app.add_subcommand("indices", "Growth indices, duality residuals, delta verdicts");
  indices->add_option("--function", cfg.function, "Function descriptor or file")->required();
  add_common(indices);

  auto* norm_cmd = app.add_subcommand("norm", "Norm of a step function");
  norm_cmd->add_option("--function", cfg.function, "Step function file (CSV or JSON)")->required();
  norm_cmd->add_option("--spec", cfg.spec, "Norm descriptor or file")->required();
  norm_cmd->add_option("--tol", cfg.tol, "Relative tolerance of the Luxemburg bisection");
  add_common(norm_cmd);

  auto* compact = app.add_subcommand("compactness", "Equi-integrability and related probes");
  compact->add_option("--family", cfg.family, "Family record file or inline JSON");
  compact->add_option("--spec", cfg.spec, "Norm descriptor or file")->required();
  compact->add_option("--mode", cfg.mode, "equi | tail | vp | l1const | remark33 | case41");
  compact->add_option("--function", cfg.function, "Orlicz function for remark33 (default power:p=2)");
  compact->add_option("--sets", cfg.sets, "Set sequence for equi: tail | halving | suffix");
  compact->add_option("--seed", cfg.seed, "Seed for l1const");
  compact->add_option("--trials", cfg.trials, "Random simplex trials for l1const");
  compact->add_option("--count", cfg.count, "Threshold count for vp");
  compact->add_option("--n", cfg.n, "Family size for remark33 without --family");
  add_common(compact);

  auto* mult = app.add_subcommand("multiplier", "Pointwise multiplier norm estimate");
  mult->add_option("--function", cfg.function, "Step function file (CSV or JSON)")->required();
  mult->add_option("--spec", cfg.spec, "Domain norm X")->required();
  mult->add_option("--target", cfg.target, "Target norm Y (default: X)");
  mult->add_option("--seed", cfg.seed, "Seed for random probes");
  mult->add_option("--probes", cfg.probes, "Number of random probes");
  add_common(mult);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*catalog) return cmd_catalog(cfg);
    if (*indices) return cmd_indices(cfg);
    if (*norm_cmd) return cmd_norm(cfg);
    if (*compact) return cmd_compactness(cfg);
    if (*mult) return cmd_multiplier(cfg);
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitInput;
}
