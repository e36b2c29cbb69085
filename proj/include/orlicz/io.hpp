#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "orlicz/compactness.hpp"
#include "orlicz/delta.hpp"
#include "orlicz/indices.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/orlicz_function.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

// Insertion-ordered so that reports serialize byte-identically.
using Json = nlohmann::ordered_json;

/// Function descriptors, as text or JSON:
///   power:p=2  example55  phi_r:r=0.5  phi_b:b=1  valle_poussin_sum:thresholds=0;1;2;4
///   conjugate:<descriptor>  table:<csv path>
///   {"name": "power", "params": {"p": 2}}  {"name": "valle_poussin_sum", "thresholds": [0, 1]}
///   {"conjugate": <descriptor>}  {"table": "<csv path>", "enforce_coverage": true, "coercive": true}
/// A text descriptor starting with '{' is parsed as JSON.
OrliczFunction parse_function(std::string_view text);
OrliczFunction function_from_json(const Json& json);
Json to_json(const CatalogEntry& entry);

/// Two-column CSV (u, phi) with strictly increasing u; '#' lines and a
/// non-numeric header row are skipped. `coercive` is the caller's claim that
/// phi(u)/u grows without bound beyond the table.
OrliczFunction load_table_csv(const std::string& path, bool enforce_coverage = true,
                              bool coercive = true);

/// Norm descriptors: L1  Lp:2  LorentzP1:2  LambdaW:2  Orlicz:<function>  A&B (intersection),
/// or JSON {"tag": "Lp", "p": 2}, {"tag": "Orlicz", "phi": ...},
/// {"tag": "Intersection", "first": ..., "second": ...}.
NormSpec parse_norm_spec(std::string_view text);
NormSpec norm_spec_from_json(const Json& json);
Json to_json(const NormSpec& spec);

/// Step functions: CSV rows "value,weight" or a JSON array of [value, weight]
/// pairs / {"value", "weight"} objects.
StepFunction parse_step_function(const Json& json);
StepFunction load_step_function(const std::string& path);
Json to_json(const StepFunction& f);
std::string to_csv(const StepFunction& f);

/// Family records: {"generator": "spike_train", "n": 4, "params": {...}, "seed": 1}
/// or {"members": [<step function>, ...]} on a shared layout.
Family parse_family(const Json& json);
Family load_family(const std::string& path);
Json to_json(const Family& family);

Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);

Json to_json(const IndexValue& v);
Json to_json(const IndexReport& r);
Json to_json(const DualityResidual& r);
Json to_json(const DeltaVerdict& v);
Json to_json(const DecayProfile& p);
Json to_json(const VallePoussinReport& r);
Json to_json(const Remark33Report& r);
Json to_json(const L1EquivalenceReport& r);
Json to_json(const CaseSplitReport& r);
Json to_json(const MultiplierReport& r);

/// Flat "parameter,supremum" projection.
std::string to_csv(const DecayProfile& p);

}  // namespace orlicz
