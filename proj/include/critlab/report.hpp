#pragma once

// JSON rendering of every report, plus a validator for the envelope
//   {"schema_version", "command", "inputs", "result"}.
// Keys are sorted (nlohmann::json objects are ordered maps); rationals and
// valuations are strings ("num/den", "inf") so they round-trip exactly.

#include "critlab/family.hpp"
#include "critlab/gleason.hpp"
#include "critlab/orbit.hpp"
#include "critlab/psi.hpp"
#include "critlab/variety.hpp"

#include "json.hpp"

#include <set>

namespace critlab::report {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "critlab/1";

class ReportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Json rat(const Rational& r) { return to_string(r); }
inline Json val(const ValOrInf& v) { return v.str(); }

inline Json poly(const UniPoly<Rational>& p) {
  Json c = Json::array();
  for (const auto& x : p.coefficients()) c.push_back(rat(x));
  return {{"degree", p.degree()}, {"coefficients", c}};
}

inline Json alg(const AlgElem& x) {
  Json c = Json::array();
  for (const auto& r : x.representative().coefficients()) c.push_back(rat(r));
  return c;  // coefficients of 1, t, t^2, ...
}

inline Json vals(const std::vector<ValOrInf>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(val(x));
  return out;
}

template <class Map>
Json bool_map(const Map& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[std::to_string(k)] = v;
  return out;
}

inline Json to_json(const family::LemmaPPReport& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"polynomial", x.polynomial}, {"monomial", x.monomial}, {"coefficient", rat(x.coefficient)}, {"valuation", val(x.valuation)}});
  return {{"d", r.d},
          {"p", r.p},
          {"applicable", r.applicable},
          {"d_is_power_of_p", r.d_is_power_of_p},
          {"F_congruent", r.F_congruent},
          {"Phi_congruent", r.Phi_congruent},
          {"F_min_valuation", val(r.F_gauss.min)},
          {"Phi_min_valuation", val(r.Phi_gauss.min)},
          {"failing_terms", r.failing_terms},
          {"witnesses", w},
          {"passed", r.passed()}};
}

inline Json to_json(const family::LambdaJacobianReport& r) {
  Json dev = Json::array();
  for (const auto& e : r.deviations) dev.push_back({{"row", e.row}, {"col", e.col}, {"reduced", e.reduced}, {"expected", e.expected}});
  Json jac = Json::array();
  for (const auto& row : r.jacobian) {
    Json jr = Json::array();
    for (const auto& e : row) jr.push_back(e.str());
    jac.push_back(jr);
  }
  return {{"d", r.d},
          {"p", r.p},
          {"jacobian", jac},
          {"reduced", r.reduced},
          {"entries_integral", r.entries_integral},
          {"entries_constant_mod_p", r.entries_constant_mod_p},
          {"determinant_mod_p", r.determinant_mod_p},
          {"nonsingular", r.nonsingular},
          {"matches_reference", r.matches_reference},
          {"det_is_minus_one", r.det_is_minus_one},
          {"deviations", dev},
          {"passed", r.passed()}};
}

inline Json to_json(const orbit::OrbitFloor& f) {
  return {{"alpha", val(f.alpha)}, {"beta", val(f.beta)}, {"epsilon", rat(f.epsilon)}, {"floor", val(f.floor)}};
}

inline Json to_json(const orbit::OrbitVerdict& v) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, orbit::Escaping>) {
          return {{"tag", "escaping"}, {"first_dip_step", x.first_dip_step}, {"valuations", vals(x.valuations)}};
        } else if constexpr (std::is_same_v<T, orbit::BoundedCertified>) {
          return {{"tag", "bounded_certified"}, {"reason", orbit::to_string(x.reason)}, {"cycle_start", x.cycle_start},
                  {"period", x.period}, {"valuations", vals(x.valuations)}};
        } else {
          return {{"tag", "bounded_up_to"}, {"steps", x.steps}, {"min_valuation_seen", val(x.min_valuation_seen)},
                  {"valuations", vals(x.valuations)}};
        }
      },
      v);
}

inline Json to_json(const orbit::HeightResult& h) {
  Json out = {{"certified", h.certified}, {"verdict", to_json(h.verdict)}};
  out["height"] = h.certified ? rat(h.value) : Json(nullptr);
  return out;
}

inline Json to_json(const orbit::PostcriticalHeightReport& r) {
  Json pts = Json::array();
  for (const auto& p : r.points) {
    Json j = to_json(p.height);
    j["point"] = rat(p.point);
    pts.push_back(j);
  }
  Json out = {{"points", pts}, {"certified", r.certified}, {"H", rat(r.H)}};
  out["integrality_verdict"] = r.integrality_verdict ? Json(*r.integrality_verdict) : Json(nullptr);
  return out;
}

inline Json to_json(const gleason::GleasonReport& r) {
  return {{"d", r.d},
          {"N", r.N},
          {"degree", r.degree},
          {"derivative_congruent_1", bool_map(r.derivative_congruent_1)},
          {"gcd_trivial", r.gcd_trivial},
          {"passed", r.passed()}};
}

inline Json to_json(const gleason::MisiurewiczReport& r) {
  return {{"d", r.d},
          {"N", r.N},
          {"n", r.n},
          {"multiple_zero_locus", poly(r.multiple_zero_locus)},
          {"divides_previous", r.divides_previous},
          {"omega_simplicity", bool_map(r.omega_simplicity)},
          {"passed", r.passed()}};
}

inline Json to_json(const variety::VarietyWitness& w) {
  Json pts = Json::array();
  for (const auto& p : w.points) {
    Json j = {{"minimal_poly", poly(p.minimal_poly)}, {"b", alg(p.b)}, {"jacobian_det", alg(p.jacobian_det)}, {"verified", p.verified}};
    j["a"] = p.a ? alg(*p.a) : Json(nullptr);
    pts.push_back(j);
  }
  Json out = {{"d", w.d},
              {"m", w.m},
              {"n", w.n},
              {"eliminant_in_b", poly(w.eliminant_in_b)},
              {"shear", w.shear},
              {"a_squarefree", w.a_squarefree},
              {"b_squarefree", w.b_squarefree},
              {"point_count_bound", w.point_count_bound},
              {"points", pts},
              {"all_points_explicit", w.all_points_explicit}};
  out["eliminant_in_a"] = w.eliminant_in_a ? poly(*w.eliminant_in_a) : Json(nullptr);
  return out;
}

inline Json to_json(const variety::SimplicityReport& r) {
  Json ev = Json::array();
  for (const auto& row : r.entry_valuations) ev.push_back(vals(row));
  return {{"d", r.d},
          {"n", r.n},
          {"p", r.p},
          {"entry_valuations", ev},
          {"matrix_F_congruent_zero", r.matrix_F_congruent_zero},
          {"lambda_det_ok", r.lambda_det_ok},
          {"passed", r.passed()}};
}

inline Json to_json(const variety::AuditReport& r) {
  Json es = Json::array();
  for (const auto& e : r.entries) {
    Json segs = Json::array();
    for (const auto& s : e.polygon.segments) segs.push_back({{"slope", rat(s.slope)}, {"length", s.length}});
    Json j = {{"label", e.label}, {"segments", segs}, {"zero_roots", e.polygon.zero_roots}, {"passed", e.passed}};
    j["offending_root_valuation"] = e.offending ? rat(Rational(-e.offending->slope)) : Json(nullptr);
    es.push_back(j);
  }
  return {{"p", r.p}, {"entries", es}, {"passed", r.passed()}};
}

inline Json to_json(const psi::PsiReport& r) {
  Json primes = Json::object();
  for (const auto& [p, pr] : r.primes) {
    Json cv = Json::object();
    for (const auto& [k, v] : pr.coefficient_valuations) cv[std::to_string(k)] = val(v);
    primes[std::to_string(p)] = {{"nu_L", val(pr.nu_L)},
                                 {"nu_lambda", rat(pr.nu_lambda)},
                                 {"coefficient_valuations", cv},
                                 {"monic", pr.monic},
                                 {"min_critical_valuation", val(pr.min_critical_valuation)},
                                 {"critical_one_valuation", val(pr.critical_one_valuation)},
                                 {"integral", pr.integral}};
  }
  return {{"indices", r.indices},
          {"degree", r.degree},
          {"leading", rat(r.leading)},
          {"pcf_certified", r.pcf_certified},
          {"centered_certified", r.centered_certified},
          {"fixed_critical_one", r.fixed_critical_one},
          {"primes", primes}};
}

inline Json envelope(const std::string& command, Json inputs, Json result) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", std::move(inputs)}, {"result", std::move(result)}};
}

namespace detail {

enum class Kind { Bool, Integer, String, Rational, Valuation, Object, Array, Poly };

inline bool is_rational_string(const Json& j) {
  if (!j.is_string()) return false;
  try {
    parse_rational(j.get<std::string>());
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

inline bool matches(const Json& j, Kind k) {
  switch (k) {
    case Kind::Bool: return j.is_boolean();
    case Kind::Integer: return j.is_number_integer();
    case Kind::String: return j.is_string();
    case Kind::Rational: return is_rational_string(j);
    case Kind::Valuation: return is_rational_string(j) || j == "inf";
    case Kind::Object: return j.is_object();
    case Kind::Array: return j.is_array();
    case Kind::Poly: {
      if (!j.is_object() || !j.contains("degree") || !j.contains("coefficients")) return false;
      if (!j["degree"].is_number_integer() || !j["coefficients"].is_array()) return false;
      for (const auto& c : j["coefficients"])
        if (!is_rational_string(c)) return false;
      return static_cast<long>(j["coefficients"].size()) == j["degree"].get<long>() + 1;
    }
  }
  return false;
}

using Schema = std::vector<std::pair<std::string, Kind>>;

inline const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"val", {{"valuation", Kind::Valuation}}},
      {"cyclo", {{"valuation", Kind::Valuation}, {"oracle_valuation", Kind::Valuation}, {"phi_m_at_1", Kind::Rational}, {"agrees", Kind::Bool}}},
      {"family", {{"d", Kind::Integer}}},
      {"orbit", {{"floor", Kind::Object}, {"verdict", Kind::Object}}},
      {"pcb", {{"postcritically_bounded", Kind::Bool}}},
      {"height", {{"certified", Kind::Bool}}},
      {"gleason", {{"gcd_trivial", Kind::Bool}, {"derivative_congruent_1", Kind::Object}, {"degree", Kind::Integer}, {"passed", Kind::Bool}}},
      {"misiurewicz", {{"multiple_zero_locus", Kind::Poly}, {"divides_previous", Kind::Bool}, {"omega_simplicity", Kind::Object}, {"passed", Kind::Bool}}},
      {"variety", {{"witness", Kind::Object}, {"audit", Kind::Object}}},
      {"psi", {{"pcf_certified", Kind::Bool}, {"centered_certified", Kind::Bool}, {"degree", Kind::Integer}, {"leading", Kind::Rational}, {"primes", Kind::Object}}},
  };
  return s;
}

// Every string that looks numeric must be a canonical rational.
inline void check_numbers(const Json& j, const std::string& path) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) check_numbers(it.value(), path + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) check_numbers(j[i], path + "[" + std::to_string(i) + "]");
  } else if (j.is_number_float()) {
    throw ReportError(path + ": floating-point value in report");
  }
}

}  // namespace detail

/// Throws ReportError describing the first problem found.
inline void validate_report(const Json& j) {
  if (!j.is_object()) throw ReportError("report is not an object");
  for (const char* key : {"schema_version", "command", "inputs", "result"})
    if (!j.contains(key)) throw ReportError(std::string("missing key: ") + key);
  if (j["schema_version"] != kSchemaVersion) throw ReportError("unsupported schema_version");
  if (!j["command"].is_string()) throw ReportError("command must be a string");
  const auto& all = detail::schemas();
  auto it = all.find(j["command"].get<std::string>());
  if (it == all.end()) throw ReportError("unknown command: " + j["command"].get<std::string>());
  if (!j["inputs"].is_object()) throw ReportError("inputs must be an object");
  const Json& result = j["result"];
  if (!result.is_object()) throw ReportError("result must be an object");
  for (const auto& [key, kind] : it->second) {
    if (!result.contains(key)) throw ReportError("result missing key: " + key);
    if (!detail::matches(result[key], kind)) throw ReportError("result key has the wrong type: " + key);
  }
  detail::check_numbers(j, "$");
}

inline bool is_valid_report(const Json& j) {
  try {
    validate_report(j);
    return true;
  } catch (const ReportError&) {
    return false;
  }
}

}  // namespace critlab::report
