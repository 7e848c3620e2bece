#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "tropref/blowups.hpp"
#include "tropref/chowring.hpp"
#include "tropref/conecx.hpp"
#include "tropref/gerby.hpp"
#include "tropref/puncture.hpp"
#include "tropref/tropmaps.hpp"

namespace tropref::io {

using json = nlohmann::json;

// A fixture holds a cone complex with offsets, numerical data, or both.
struct Fixture {
  ComplexPtr complex;
  PuncturingData offsets;
  IdealMode mode = IdealMode::Offsets;
  std::optional<std::vector<RaySet>> normal_data;
  std::vector<std::array<RayId, 2>> forced_centers;
  std::optional<NumericalData> numerical;
  std::optional<TargetModel> model;
};

json read_file(const std::string& path);

Fixture parse_fixture(const json& j, const std::string& path = "$");
ComplexPtr parse_complex(const json& j, const std::string& path = "$");
PuncturingData parse_offsets(const json& j, const ComplexPtr& c, const std::string& path);
NumericalData parse_numerical(const json& j, const std::string& path);
TargetModel parse_model(const json& j, int k, const std::string& path);
RootingData parse_rooting(const json& j, const std::string& path = "$");
std::vector<SubdivisionStep> parse_trace(const json& j, const std::string& path);
Fan parse_fan(const json& j, int k, const std::string& path);

json to_json(const ChowClass& a);
json to_json(const ConeComplex& c);
json to_json(const PuncturingData& pd);
json to_json(const NumericalData& nd);
json to_json(const TropicalType& t);
json to_json(const ValidationReport& r);
json to_json(const SubdivisionStep& s);
json to_json(const RaySet& s);

}  // namespace tropref::io
