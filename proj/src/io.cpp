#include "orlicz/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "orlicz/conjugate.hpp"
#include "orlicz/errors.hpp"

namespace orlicz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool try_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

double number(std::string_view s, std::string_view what) {
  double v = 0;
  if (!try_number(s, v)) {
    throw InputError(std::string(what) + ": cannot parse number '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

Json parse_json_text(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

double json_number(const Json& j, std::string_view what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected a number");
  return j.get<double>();
}

CatalogEntry catalog_from_text(std::string_view text) {
  const auto colon = text.find(':');
  CatalogEntry e;
  try {
    e.name = catalog_name_from_string(trim(text.substr(0, colon)));
  } catch (const std::exception&) {
    throw InputError("unknown function '" + std::string(trim(text.substr(0, colon))) + "'");
  }
  if (colon != std::string_view::npos) {
    for (auto item : split(text.substr(colon + 1), ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw InputError("function parameter '" + std::string(item) + "' needs key=value");
      }
      const std::string key(trim(item.substr(0, eq)));
      const auto value = item.substr(eq + 1);
      if (key == "thresholds") {
        for (auto t : split(value, ';')) e.thresholds.push_back(number(t, "thresholds"));
      } else {
        e.params[key] = number(value, key);
      }
    }
  }
  return e;
}

}  // namespace

OrliczFunction parse_function(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty function descriptor");
  if (text.front() == '{') return function_from_json(parse_json_text(text, "function descriptor"));
  if (text.rfind("conjugate:", 0) == 0) return conjugate(parse_function(text.substr(10)));
  if (text.rfind("table:", 0) == 0) return load_table_csv(std::string(trim(text.substr(6))));
  return OrliczFunction::catalog(catalog_from_text(text));
}

OrliczFunction function_from_json(const Json& json) {
  if (json.is_string()) return parse_function(json.get<std::string>());
  if (!json.is_object()) throw InputError("function descriptor must be a string or object");
  if (json.contains("conjugate")) return conjugate(function_from_json(json.at("conjugate")));
  if (json.contains("table")) {
    return load_table_csv(json.at("table").get<std::string>(), json.value("enforce_coverage", true),
                          json.value("coercive", true));
  }
  if (!json.contains("name") || !json.at("name").is_string()) {
    throw InputError("function descriptor needs a name");
  }
  CatalogEntry e;
  try {
    e.name = catalog_name_from_string(json.at("name").get<std::string>());
  } catch (const std::exception&) {
    throw InputError("unknown function '" + json.at("name").get<std::string>() + "'");
  }
  if (json.contains("params")) {
    for (const auto& [k, v] : json.at("params").items()) e.params[k] = json_number(v, k);
  }
  if (json.contains("thresholds")) {
    for (const auto& t : json.at("thresholds")) e.thresholds.push_back(json_number(t, "thresholds"));
  }
  return OrliczFunction::catalog(std::move(e));
}

Json to_json(const CatalogEntry& entry) {
  Json j;
  j["name"] = std::string(to_string(entry.name));
  Json params = Json::object();
  for (const auto& [k, v] : entry.params) params[k] = v;
  j["params"] = params;
  if (entry.name == CatalogName::valle_poussin_sum) j["thresholds"] = entry.thresholds;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json_file(const std::string& path) {
  return parse_json_text(read_text_file(path), path);
}

namespace {

// Numeric rows of a two-column CSV; comments and a leading header are skipped.
std::vector<std::pair<double, double>> read_pairs(const std::string& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto cells = split(t, ',');
    if (cells.size() != 2) {
      throw InputError(path + ":" + std::to_string(lineno) + ": expected two columns");
    }
    double a = 0, b = 0;
    if (!try_number(cells[0], a) || !try_number(cells[1], b)) {
      if (rows.empty()) continue;  // header
      throw InputError(path + ":" + std::to_string(lineno) + ": non-numeric row");
    }
    rows.emplace_back(a, b);
  }
  return rows;
}

}  // namespace

OrliczFunction load_table_csv(const std::string& path, bool enforce_coverage, bool coercive) {
  std::vector<wide> u, phi;
  for (const auto& [a, b] : read_pairs(path)) {
    u.push_back(a);
    phi.push_back(b);
  }
  TabulatedConvex::Options options;
  options.enforce_coverage = enforce_coverage;
  TabulatedConvex table(std::move(u), std::move(phi), options);
  return OrliczFunction::tabulated(std::move(table), coercive);
}

NormSpec parse_norm_spec(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InputError("empty norm descriptor");
  if (text.front() == '{') return norm_spec_from_json(parse_json_text(text, "norm descriptor"));
  if (const auto amp = text.find('&'); amp != std::string_view::npos) {
    return NormSpec::intersection(parse_norm_spec(text.substr(0, amp)),
                                  parse_norm_spec(text.substr(amp + 1)));
  }
  const auto colon = text.find(':');
  const std::string tag(trim(text.substr(0, colon)));
  const std::string_view arg = colon == std::string_view::npos ? "" : text.substr(colon + 1);
  if (tag == "L1") return NormSpec::l1();
  if (arg.empty()) throw InputError("norm '" + tag + "' needs a parameter");
  if (tag == "Lp") return NormSpec::lp(number(arg, "Lp"));
  if (tag == "LorentzP1") return NormSpec::lorentz_p1(number(arg, "LorentzP1"));
  if (tag == "LambdaW") return NormSpec::lambda_w_p(number(arg, "LambdaW"));
  if (tag == "Orlicz") return NormSpec::orlicz(parse_function(arg));
  throw InputError("unknown norm '" + tag + "'");
}

NormSpec norm_spec_from_json(const Json& json) {
  if (json.is_string()) return parse_norm_spec(json.get<std::string>());
  if (!json.is_object() || !json.contains("tag")) throw InputError("norm descriptor needs a tag");
  const std::string tag = json.at("tag").get<std::string>();
  auto p = [&] {
    if (!json.contains("p")) throw InputError("norm '" + tag + "' needs p");
    return json_number(json.at("p"), "p");
  };
  if (tag == "L1") return NormSpec::l1();
  if (tag == "Lp") return NormSpec::lp(p());
  if (tag == "LorentzP1") return NormSpec::lorentz_p1(p());
  if (tag == "LambdaW") return NormSpec::lambda_w_p(p());
  if (tag == "Orlicz") {
    if (!json.contains("phi")) throw InputError("Orlicz norm needs phi");
    return NormSpec::orlicz(function_from_json(json.at("phi")));
  }
  if (tag == "Intersection") {
    if (!json.contains("first") || !json.contains("second")) {
      throw InputError("Intersection needs first and second");
    }
    return NormSpec::intersection(norm_spec_from_json(json.at("first")),
                                  norm_spec_from_json(json.at("second")));
  }
  throw InputError("unknown norm '" + tag + "'");
}

Json to_json(const NormSpec& spec) {
  struct Visitor {
    Json operator()(const L1Norm&) const { return {{"tag", "L1"}}; }
    Json operator()(const LpNorm& n) const { return {{"tag", "Lp"}, {"p", n.p}}; }
    Json operator()(const OrliczNorm& n) const {
      Json j{{"tag", "Orlicz"}};
      if (const auto* e = n.phi.catalog_entry()) {
        j["phi"] = to_json(*e);
      } else {
        j["phi"] = n.phi.label();
      }
      return j;
    }
    Json operator()(const LorentzP1Norm& n) const { return {{"tag", "LorentzP1"}, {"p", n.p}}; }
    Json operator()(const LambdaWNorm& n) const {
      if (n.w.antiderivative) return {{"tag", "LambdaW"}, {"weight", n.w.name}};
      return {{"tag", "LambdaW"}, {"p", n.w.p}};
    }
    Json operator()(const IntersectionNorm& n) const {
      return {{"tag", "Intersection"}, {"first", to_json(*n.first)}, {"second", to_json(*n.second)}};
    }
  };
  return std::visit(Visitor{}, spec.kind);
}

StepFunction parse_step_function(const Json& json) {
  if (!json.is_array()) throw InputError("step function must be a JSON array");
  std::vector<Block> blocks;
  for (const auto& item : json) {
    if (item.is_array() && item.size() == 2) {
      blocks.push_back({json_number(item[0], "value"), json_number(item[1], "weight")});
    } else if (item.is_object() && item.contains("value") && item.contains("weight")) {
      blocks.push_back({json_number(item.at("value"), "value"),
                        json_number(item.at("weight"), "weight")});
    } else {
      throw InputError("step function blocks must be [value, weight] pairs");
    }
  }
  return StepFunction(std::move(blocks));
}

StepFunction load_step_function(const std::string& path) {
  const std::string text = read_text_file(path);
  const auto t = trim(text);
  if (!t.empty() && t.front() == '[') return parse_step_function(parse_json_text(t, path));
  std::vector<Block> blocks;
  for (const auto& [v, w] : read_pairs(path)) blocks.push_back({v, w});
  return StepFunction(std::move(blocks));
}

Json to_json(const StepFunction& f) {
  Json j = Json::array();
  for (const auto& b : f.blocks()) j.push_back(Json::array({b.value, b.weight}));
  return j;
}

std::string to_csv(const StepFunction& f) {
  std::ostringstream os;
  os.precision(17);
  os << "value,weight\n";
  for (const auto& b : f.blocks()) os << b.value << ',' << b.weight << '\n';
  return os.str();
}

Family parse_family(const Json& json) {
  if (!json.is_object()) throw InputError("family record must be a JSON object");
  if (json.contains("members")) {
    Family family;
    for (const auto& m : json.at("members")) family.push_back(parse_step_function(m));
    check_family(family);
    return family;
  }
  if (!json.contains("generator") || !json.contains("n")) {
    throw InputError("family record needs generator and n, or members");
  }
  GeneratorSpec spec;
  spec.name = json.at("generator").get<std::string>();
  if (json.contains("params")) {
    for (const auto& [k, v] : json.at("params").items()) spec.params[k] = json_number(v, k);
  }
  spec.seed = json.value("seed", std::uint64_t{0});
  const double n = json_number(json.at("n"), "n");
  if (!(n >= 1) || n != std::floor(n)) throw InputError("family: n must be an integer >= 1");
  return disjoint_family(spec, static_cast<std::size_t>(n));
}

Family load_family(const std::string& path) { return parse_family(read_json_file(path)); }

Json to_json(const Family& family) {
  Json members = Json::array();
  for (const auto& f : family) members.push_back(to_json(f));
  return {{"members", members}};
}

Json to_json(const IndexValue& v) {
  return {{"estimate", v.estimate}, {"infinite", v.infinite}, {"increasing", v.increasing}};
}

namespace {

Json optional_index(const std::optional<IndexValue>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const IndexReport& r) {
  Json j;
  j["a_inf"] = optional_index(r.a_inf);
  j["alpha_inf"] = optional_index(r.alpha_inf);
  j["beta_inf"] = optional_index(r.beta_inf);
  j["b_inf"] = optional_index(r.b_inf);
  j["probe_ts"] = r.probe_ts;
  j["probe_log_us"] = r.probe_log_us;
  j["log_M"] = r.log_M;
  j["log_ratio_matrix"] = r.log_ratio_matrix;
  j["simonenko_ratios"] = r.simonenko_ratios;
  return j;
}

Json to_json(const DualityResidual& r) {
  return {{"matuszewska_residual", r.matuszewska}, {"simonenko_residual", r.simonenko}};
}

Json to_json(const DeltaVerdict& v) {
  Json j;
  j["condition"] = std::string(to_string(v.condition));
  j["holds"] = v.holds;
  j["evidence"] = v.evidence;
  j["threshold_used"] = v.threshold_used;
  j["lambda_used"] = v.lambda_used;
  j["u0"] = v.u0;
  j["witness_u"] = v.witness_u;
  j["witness_log_ratio"] = v.witness_log_ratio;
  j["probe_us"] = v.probe_us;
  j["log_ratios"] = v.log_ratios;
  return j;
}

Json to_json(const DecayProfile& p) {
  Json j;
  j["parameter"] = p.parameter_name;
  j["parameters"] = p.parameters;
  j["suprema"] = p.suprema;
  j["decays_to_zero"] = p.decays_to_zero;
  j["nonincreasing"] = p.nonincreasing;
  j["final_value"] = p.final_value;
  return j;
}

Json to_json(const VallePoussinReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["pi_squared_over_6"] = M_PI * M_PI / 6;
  j["superlinear_ok"] = r.superlinear_ok;
  j["thresholds"] = r.thresholds;
  j["tail_norms"] = r.tail_norms;
  j["slopes"] = r.slopes;
  return j;
}

Json to_json(const Remark33Report& r) {
  return {{"vp_bound", r.vp_bound}, {"unit_norm", r.unit_norm},
          {"equi_profile", to_json(r.equi_profile)}};
}

Json to_json(const L1EquivalenceReport& r) {
  Json j;
  j["lower_constant"] = r.lower_constant;
  j["upper_constant"] = r.upper_constant;
  j["all_ones_ratio"] = r.all_ones_ratio;
  j["achieving"] = r.achieving;
  j["trial_count"] = r.trials.size();
  j["trials"] = r.trials;
  j["ratios"] = r.ratios;
  return j;
}

Json to_json(const CaseSplitReport& r) {
  Json j;
  j["case"] = r.case_number;
  j["delta"] = r.delta;
  j["delta_floor"] = r.delta_floor;
  j["p"] = r.p;
  j["l1_norms"] = r.l1_norms;
  j["lorentz_norms"] = r.lorentz_norms;
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"k", row.k},
                    {"max_truncated_lorentz", row.max_truncated_lorentz},
                    {"l1_lower_bound", row.l1_lower_bound},
                    {"violating", row.violating},
                    {"violating_l1", row.violating_l1},
                    {"bound_holds", row.bound_holds}});
  }
  j["rows"] = rows;
  return j;
}

Json to_json(const MultiplierReport& r) {
  Json j;
  j["norm_estimate"] = r.norm_estimate;
  j["lower_bound"] = r.lower_bound;
  j["closed_form_upper"] = r.closed_form_upper ? Json(*r.closed_form_upper) : Json(nullptr);
  j["probe_count"] = r.probe_count;
  j["achieving_g"] = to_json(r.achieving);
  return j;
}

std::string to_csv(const DecayProfile& p) {
  std::ostringstream os;
  os.precision(17);
  os << p.parameter_name << ",supremum\n";
  for (std::size_t i = 0; i < p.parameters.size(); ++i) {
    os << p.parameters[i] << ',' << p.suprema[i] << '\n';
  }
  return os.str();
}

}  // namespace orlicz
