#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kb/constants.hpp"
#include "kb/stress.hpp"

namespace kb::report {

using json = nlohmann::ordered_json;

inline constexpr const char* csv_header = "trial_id,lambda_re,lambda_im,region,lhs,rhs,bound,ratio,pass,note";

// 17 significant digits; "inf"/"-inf"/"nan" for non-finite values.
std::string num17(double x);
// Finite doubles stay numbers, non-finite become strings.
json jnum(double x);

void write_csv(std::ostream& o, const std::vector<verify::StressRecord>& records);
json record_json(const verify::StressRecord& r);
json records_json(const std::vector<verify::StressRecord>& records);
json bounds_json(const verify::EstimateBounds& b);
json summary_json(const stress::StressSummary& s);
json constant_json(const constants::ConstantReport& r);

// Max ratio per grid cell over profiles and both records; grey cells have no ratio.
std::string heatmap_svg(const stress::StressSummary& s, const stress::LambdaGrid& g, int profile_count);

// Writes path via a sibling temporary and rename; throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace kb::report
