#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "models.hpp"

namespace intertwine {

/// One measured quantity of a check with its acceptance threshold.
struct Residual {
  enum class Bound { Below, AtLeast, Info };

  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  Bound bound = Bound::Below;

  bool pass() const {
    if (bound == Bound::Info) return true;
    if (!std::isfinite(value)) return false;
    return bound == Bound::Below ? value < threshold : value >= threshold;
  }
};

/// Outcome of one check over (relation, model, parameters, level range).
struct VerificationReport {
  std::string relation_id;
  ModelId model = ModelId::HarmonicOscillator;
  ParameterSet params;
  int n = 0;
  int n_max = 0;
  std::vector<Residual> residuals;
  std::string note;
  bool failed_hard = false;  // a check that threw counts as a failure
  double wall_seconds = 0.0;

  VerificationReport& below(std::string name, double value, double tolerance) {
    residuals.push_back({std::move(name), value, tolerance, Residual::Bound::Below});
    return *this;
  }
  VerificationReport& at_least(std::string name, double value, double threshold) {
    residuals.push_back({std::move(name), value, threshold, Residual::Bound::AtLeast});
    return *this;
  }
  VerificationReport& info(std::string name, double value) {
    residuals.push_back({std::move(name), value, 0.0, Residual::Bound::Info});
    return *this;
  }

  const Residual* find(std::string_view name) const {
    for (const auto& r : residuals)
      if (r.name == name) return &r;
    return nullptr;
  }
  double value(std::string_view name) const {
    const Residual* r = find(name);
    return r ? r->value : std::numeric_limits<double>::quiet_NaN();
  }

  bool pass() const {
    if (failed_hard) return false;
    for (const auto& r : residuals)
      if (!r.pass()) return false;
    return true;
  }
};

inline nlohmann::ordered_json params_to_json(ModelId id, const ParameterSet& p) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto name : parameter_names(id)) j[std::string(name)] = parameter_value(p, name);
  return j;
}

namespace detail {
// JSON has no NaN/inf; encode them as strings so reports stay valid.
inline nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}
}  // namespace detail

/// One results[] row.  Wall time is left out so that rows are reproducible.
inline nlohmann::ordered_json to_json(const VerificationReport& r) {
  nlohmann::ordered_json j;
  j["relation_id"] = r.relation_id;
  j["model"] = std::string(model_name(r.model));
  j["params"] = params_to_json(r.model, r.params);
  j["n"] = r.n;
  if (r.n_max != r.n) j["n_max"] = r.n_max;
  nlohmann::ordered_json res = nlohmann::ordered_json::object();
  nlohmann::ordered_json tol = nlohmann::ordered_json::object();
  for (const auto& x : r.residuals) {
    res[x.name] = detail::number(x.value);
    if (x.bound == Residual::Bound::Below) tol[x.name] = "< " + std::to_string(x.threshold);
    if (x.bound == Residual::Bound::AtLeast) tol[x.name] = ">= " + std::to_string(x.threshold);
  }
  j["residuals"] = std::move(res);
  j["tolerances"] = std::move(tol);
  j["pass"] = r.pass();
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace detail {
inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}
}  // namespace detail

/// Flat CSV: one line per (report, residual) with a header row.
inline std::string to_csv(const std::vector<VerificationReport>& reports) {
  std::string out = "relation_id,model,params,n,n_max,residual,value,tolerance,pass,note\r\n";
  for (const auto& r : reports) {
    std::string params;
    for (auto name : parameter_names(r.model)) {
      if (!params.empty()) params += ";";
      params += std::string(name) + "=" + detail::format_double(parameter_value(r.params, name));
    }
    auto row = [&](const std::string& name, const std::string& value, const std::string& tol) {
      out += detail::csv_escape(r.relation_id) + "," + std::string(model_name(r.model)) + "," +
             detail::csv_escape(params) + "," + std::to_string(r.n) + "," + std::to_string(r.n_max) + "," +
             detail::csv_escape(name) + "," + value + "," + detail::csv_escape(tol) + "," +
             (r.pass() ? "true" : "false") + "," + detail::csv_escape(r.note) + "\r\n";
    };
    if (r.residuals.empty()) row("", "", "");
    for (const auto& x : r.residuals) {
      std::string tol;
      if (x.bound == Residual::Bound::Below) tol = "< " + detail::format_double(x.threshold);
      if (x.bound == Residual::Bound::AtLeast) tol = ">= " + detail::format_double(x.threshold);
      row(x.name, detail::format_double(x.value), tol);
    }
  }
  return out;
}

}  // namespace intertwine
