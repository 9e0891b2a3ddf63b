#include "heavytail/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "heavytail/errors.hpp"

namespace heavytail::serialize {
namespace {

double num(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("spec json: missing field '") + key + "'");
  if (!j.at(key).is_number()) throw ParameterError(std::string("spec json: '") + key + "' must be a number");
  return j.at(key).get<double>();
}

void reject_unknown(const json& params, std::initializer_list<const char*> known) {
  for (const auto& [k, v] : params.items()) {
    bool ok = false;
    for (const char* name : known)
      if (k == name) ok = true;
    if (!ok) throw ParameterError("spec json: unknown field '" + k + "'");
  }
}

json inf_aware(double v) {
  // JSON has no infinity literal; the wire format uses a string marker
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v;
}

}  // namespace

json spec_to_json(const DistributionSpec& spec) {
  struct V {
    json operator()(const DistributionSpec::Pareto& d) const {
      return {{"family", "pareto"}, {"params", {{"alpha", d.alpha}}}};
    }
    json operator()(const DistributionSpec::Frechet& d) const {
      return {{"family", "frechet"}, {"params", {{"alpha", d.alpha}}}};
    }
    json operator()(const DistributionSpec::Cauchy&) const {
      return {{"family", "cauchy"}, {"params", json::object()}};
    }
    json operator()(const DistributionSpec::HalfCauchy&) const {
      return {{"family", "half_cauchy"}, {"params", json::object()}};
    }
    json operator()(const DistributionSpec::Uniform& d) const {
      return {{"family", "uniform"}, {"params", {{"lo", d.lo}, {"hi", d.hi}}}};
    }
    json operator()(const DistributionSpec::Stable& d) const {
      return {{"family", "stable"},
              {"params", {{"alpha", d.params.alpha}, {"beta", d.params.beta}}}};
    }
    json operator()(const DistributionSpec::TwoPointDeadly& d) const {
      return {{"family", "two_point_deadly"}, {"params", {{"p", d.p}}}};
    }
    json operator()(const DistributionSpec::Scaled& d) const {
      return {{"family", "scaled"},
              {"params",
               {{"a", d.scale}, {"b", d.shift}, {"inner", spec_to_json(*d.inner)}}}};
    }
    json operator()(const DistributionSpec::Mixture& d) const {
      json comps = json::array();
      for (const auto& [w, c] : d.components)
        comps.push_back({{"weight", w}, {"spec", spec_to_json(*c)}});
      return {{"family", "mixture"}, {"params", {{"components", comps}}}};
    }
  };
  return std::visit(V{}, spec.node());
}

DistributionSpec spec_from_json(const json& j) {
  if (!j.is_object() || !j.contains("family"))
    throw ParameterError("spec json: expected {\"family\": ..., \"params\": {...}}");
  const std::string family = j.at("family").get<std::string>();
  const json params = j.value("params", json::object());
  for (const auto& [k, v] : j.items())
    if (k != "family" && k != "params") throw ParameterError("spec json: unknown field '" + k + "'");

  if (family == "pareto") {
    reject_unknown(params, {"alpha"});
    return DistributionSpec::pareto(num(params, "alpha"));
  }
  if (family == "frechet") {
    reject_unknown(params, {"alpha"});
    return DistributionSpec::frechet(num(params, "alpha"));
  }
  if (family == "cauchy") {
    reject_unknown(params, {});
    return DistributionSpec::cauchy();
  }
  if (family == "half_cauchy") {
    reject_unknown(params, {});
    return DistributionSpec::half_cauchy();
  }
  if (family == "uniform") {
    reject_unknown(params, {"lo", "hi"});
    return DistributionSpec::uniform(num(params, "lo"), num(params, "hi"));
  }
  if (family == "stable") {
    reject_unknown(params, {"alpha", "beta"});
    return DistributionSpec::stable(num(params, "alpha"), num(params, "beta"));
  }
  if (family == "two_point_deadly") {
    reject_unknown(params, {"p"});
    return DistributionSpec::two_point_deadly(num(params, "p"));
  }
  if (family == "scaled") {
    reject_unknown(params, {"a", "b", "inner"});
    if (!params.contains("inner")) throw ParameterError("spec json: scaled needs 'inner'");
    return DistributionSpec::scaled(num(params, "a"), num(params, "b"),
                                    spec_from_json(params.at("inner")));
  }
  if (family == "mixture") {
    reject_unknown(params, {"components"});
    if (!params.contains("components") || !params.at("components").is_array())
      throw ParameterError("spec json: mixture needs a 'components' array");
    std::vector<std::pair<double, DistributionSpec>> comps;
    for (const auto& c : params.at("components"))
      comps.emplace_back(num(c, "weight"), spec_from_json(c.at("spec")));
    return DistributionSpec::mixture(std::move(comps));
  }
  throw ParameterError("spec json: unknown family '" + family + "'");
}

json verdict_to_json(const orders::DominanceVerdict& v) {
  return {{"relation", orders::to_string(v.relation)},
          {"band_halfwidth", v.band_halfwidth},
          {"decision_threshold", v.decision_threshold},
          {"confidence", v.confidence},
          {"grid_size", v.grid.size()},
          {"max_violation", v.max_violation},
          {"left_above_max", v.left_above_max},
          {"right_above_max", v.right_above_max}};
}

json certificate_to_json(const orders::ConvexityCertificate& c, bool include_points) {
  json j{{"verdict", orders::to_string(c.verdict)},
         {"tolerance", c.tolerance},
         {"grid_size", c.grid.size()},
         {"min_second_difference", c.min_second_difference},
         {"max_second_difference", c.max_second_difference}};
  if (c.verdict != orders::Shape::Convex && !c.grid.empty() &&
      c.witness_index < c.grid.size()) {
    j["witness"] = {{"x", c.grid[c.witness_index]},
                    {"second_difference", c.second_differences.empty()
                                              ? 0.0
                                              : c.second_differences[c.witness_index - 1]}};
  }
  if (include_points) {
    j["grid"] = c.grid;
    j["values"] = c.values;
    j["second_differences"] = c.second_differences;
  }
  return j;
}

json subadditivity_to_json(const classes::SubadditivityEvidence& e) {
  json j{{"verdict",
          e.verdict == classes::SubadditivityEvidence::Verdict::Pass ? "pass" : "fail"},
         {"max_excess", inf_aware(e.max_excess)},
         {"tolerance", e.tolerance},
         {"grid_size", e.grid.size()},
         {"skipped_pairs", e.skipped_pairs}};
  if (e.verdict == classes::SubadditivityEvidence::Verdict::Fail) {
    j["witness"] = {{"x", e.witness_x},
                    {"y", e.witness_y},
                    {"h_sum", inf_aware(e.witness_lhs)},
                    {"h_parts", e.witness_rhs}};
  }
  return j;
}

json class_report_to_json(const classes::ClassReport& r) {
  json memberships = json::object();
  for (const auto& [cls, verdict] : r.memberships)
    memberships[classes::to_string(cls)] = classes::to_string(verdict);
  json certs = json::object();
  for (const auto& [cls, cert] : r.certificates)
    certs[classes::to_string(cls)] = certificate_to_json(cert);
  json j{{"memberships", memberships}, {"certificates", certs}};
  if (r.h_evidence) j["h_evidence"] = subadditivity_to_json(*r.h_evidence);
  j["config"] = {{"u_lo", r.config.skew.u_lo},
                 {"u_hi", r.config.skew.u_hi},
                 {"grid_size", r.config.skew.grid_size},
                 {"tolerance", r.config.skew.tolerance},
                 {"h_grid", {r.config.h_grid_lo, r.config.h_grid_hi}},
                 {"h_grid_size", r.config.h_grid_size},
                 {"h_tolerance", r.config.h_tolerance}};
  return j;
}

json mix_result_to_json(const stable_calc::MixResult& m) {
  const auto cls = stable_calc::classify_pooling(m.base);
  return {{"alpha", m.base.alpha},
          {"beta", m.base.beta},
          {"gamma", m.gamma},
          {"delta", m.delta},
          {"pooling_increases_risk", cls.pooling_increases_risk},
          {"reason", cls.reason}};
}

json diversification_to_json(const pooling::DiversificationReport& r) {
  json j{{"seed", r.seed},
         {"n", r.n},
         {"confidence", r.verdict.confidence},
         {"verdict", verdict_to_json(r.verdict)}};
  if (r.below_verdict_grade) j["warning"] = "n below verdict grade (10^3)";
  return j;
}

json scan_rows_to_json(const std::vector<classes::ScanRow>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json j = certificate_to_json(row.certificate);
    j["label"] = row.label;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string format_double(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string certificate_to_csv(const orders::ConvexityCertificate& c) {
  std::ostringstream out;
  out << "x,phi\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i)
    out << format_double(c.grid[i]) << ',' << format_double(c.values[i]) << '\n';
  return out.str();
}

std::string penalty_curve_to_csv(const std::vector<pooling::PenaltyPoint>& curve,
                                 const std::string& preamble) {
  std::ostringstream out;
  if (!preamble.empty()) out << "# " << preamble << '\n';
  out << "u,q_single,q_pool,penalty\n";
  for (const auto& p : curve)
    out << format_double(p.u) << ',' << format_double(p.q_single) << ','
        << format_double(p.q_pool) << ',' << format_double(p.penalty) << '\n';
  return out.str();
}

std::string scan_rows_to_csv(const std::vector<classes::ScanRow>& rows) {
  std::ostringstream out;
  out << "label,x,second_difference\n";
  for (const auto& row : rows) {
    const auto& c = row.certificate;
    for (std::size_t i = 0; i + 2 < c.grid.size(); ++i)
      out << row.label << ',' << format_double(c.grid[i + 1]) << ','
          << format_double(c.second_differences[i]) << '\n';
  }
  return out.str();
}

}  // namespace heavytail::serialize
