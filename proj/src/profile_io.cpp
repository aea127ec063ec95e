#include "asym/profile_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asym/errors.hpp"

namespace asym {

using nlohmann::json;

namespace {

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ProfileFormatError(where + ": missing \"" + key + "\"");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ProfileFormatError(where + ": \"" + key + "\" must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ProfileFormatError(where + ": \"" + key + "\" is not finite");
  return d;
}

}  // namespace

RabiProfile parse_profile(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProfileFormatError(std::string("profile is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ProfileFormatError("profile must be a JSON object");
  if (!doc.contains("terms") || !doc.at("terms").is_array()) {
    throw ProfileFormatError("profile: \"terms\" must be an array");
  }

  RabiProfile p;
  int index = 0;
  for (const auto& t : doc.at("terms")) {
    const std::string where = "terms[" + std::to_string(index++) + "]";
    if (!t.is_object()) throw ProfileFormatError(where + " must be an object");
    GaussianTerm term;
    term.weight = cplx(number_field(t, "re", where), number_field(t, "im", where));
    term.center = number_field(t, "center_over_d", where);
    term.width = number_field(t, "w_over_d", where);
    if (!(term.width > 0.0)) throw ProfileFormatError(where + ": w_over_d must be positive");
    p.terms.push_back(term);
  }
  p.tau_delta = number_field(doc, "tau_delta", "profile");
  p.tau_gamma = number_field(doc, "tau_gamma", "profile");
  if (p.tau_gamma < 0.0) throw ProfileFormatError("profile: tau_gamma must be >= 0");
  if (doc.contains("d_meters") && !doc.at("d_meters").is_null()) {
    const double d = number_field(doc, "d_meters", "profile");
    if (!(d > 0.0)) throw ProfileFormatError("profile: d_meters must be positive");
    p.d_meters = d;
  }
  return p;
}

RabiProfile load_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ProfileFormatError("cannot read profile file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_profile(ss.str());
}

std::string dump_profile(const RabiProfile& profile) {
  json doc;
  doc["terms"] = json::array();
  for (const auto& t : profile.terms) {
    doc["terms"].push_back({{"re", t.weight.real()},
                            {"im", t.weight.imag()},
                            {"center_over_d", t.center},
                            {"w_over_d", t.width}});
  }
  doc["tau_delta"] = profile.tau_delta;
  doc["tau_gamma"] = profile.tau_gamma;
  if (profile.d_meters) doc["d_meters"] = *profile.d_meters;
  return doc.dump(2) + "\n";
}

void save_profile(const std::filesystem::path& path, const RabiProfile& profile) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << dump_profile(profile);
}

}  // namespace asym
