#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "heavytail/bounds.hpp"
#include "heavytail/classes.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/orders.hpp"
#include "heavytail/pooling.hpp"
#include "heavytail/stable_calculus.hpp"

namespace heavytail::serialize {

using json = nlohmann::json;

/// {"family": "...", "params": {...}} wire format.
json spec_to_json(const DistributionSpec& spec);
DistributionSpec spec_from_json(const json& j);

json verdict_to_json(const orders::DominanceVerdict& v);
json certificate_to_json(const orders::ConvexityCertificate& c, bool include_points = false);
json subadditivity_to_json(const classes::SubadditivityEvidence& e);
json class_report_to_json(const classes::ClassReport& r);
json mix_result_to_json(const stable_calc::MixResult& m);
json diversification_to_json(const pooling::DiversificationReport& r);
json scan_rows_to_json(const std::vector<classes::ScanRow>& rows);

/// Two-column certificate export: header "x,phi", '.' decimal, no locale.
std::string certificate_to_csv(const orders::ConvexityCertificate& c);

/// Penalty curve export: header "u,q_single,q_pool,penalty".
std::string penalty_curve_to_csv(const std::vector<pooling::PenaltyPoint>& curve,
                                 const std::string& preamble = "");

/// Scan export: header "label,x,second_difference".
std::string scan_rows_to_csv(const std::vector<classes::ScanRow>& rows);

/// Deterministic number formatting used by every CSV writer (shortest
/// round-trip, C locale).
std::string format_double(double v);

}  // namespace heavytail::serialize
