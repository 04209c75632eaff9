#pragma once

// JSON space files.
//
//   {
//     "name": "s4",
//     "stabilizer_order": 1,
//     "components": [
//       { "label": "e", "mu": "0",
//         "coefficients": [ { "power": 2, "re": 0.101321, "im": 0 } ] }
//     ]
//   }

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "model.hpp"

namespace dhloc {

namespace detail {

[[noreturn]] inline void malformed(const std::string& path, const std::string& what) {
  throw InputError("malformed space file: " + path + ": " + what);
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key,
                                     const std::string& path) {
  if (!obj.is_object()) malformed(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(path + "." + key, "missing field");
  return *it;
}

inline double require_number(const nlohmann::json& obj, const char* key,
                             const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number()) malformed(path + "." + key, "expected a number");
  return v.get<double>();
}

inline long long require_integer(const nlohmann::json& obj, const char* key,
                                 const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number_integer()) malformed(path + "." + key, "expected an integer");
  return v.get<long long>();
}

}  // namespace detail

inline QHSpace load_space(std::string_view document) {
  using detail::malformed;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    malformed("$", e.what());
  }
  const std::string root = "$";
  const auto& name = detail::require(doc, "name", root);
  if (!name.is_string()) malformed("$.name", "expected a string");

  const long long k = detail::require_integer(doc, "stabilizer_order", root);
  if (k < 1 || k > std::numeric_limits<int>::max())
    malformed("$.stabilizer_order", "must be an integer >= 1");

  const auto& comps = detail::require(doc, "components", root);
  if (!comps.is_array() || comps.empty())
    malformed("$.components", "expected a nonempty array");

  std::vector<FixedComponent> components;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string path = "$.components[" + std::to_string(i) + "]";
    const auto& c = comps[i];
    const auto& label = detail::require(c, "label", path);
    if (!label.is_string()) malformed(path + ".label", "expected a string");
    const auto& mu_json = detail::require(c, "mu", path);
    if (!mu_json.is_string())
      malformed(path + ".mu", "expected a string holding an exact decimal");

    std::optional<AlcoveValue> mu;
    try {
      mu = AlcoveValue::parse(mu_json.get<std::string>());
    } catch (const InputError& e) {
      if (std::string_view(e.what()) == "mu out of alcove range")
        throw InputError(path + ".mu: mu out of alcove range");
      malformed(path + ".mu", e.what());
    }

    const auto& coeffs = detail::require(c, "coefficients", path);
    if (!coeffs.is_array() || coeffs.empty())
      malformed(path + ".coefficients", "expected a nonempty array");
    LaurentData data;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      const std::string cpath = path + ".coefficients[" + std::to_string(j) + "]";
      const long long power = detail::require_integer(coeffs[j], "power", cpath);
      if (power < 2)
        throw InputError(cpath + ".power: Euler integral must vanish to order >= 2");
      if (power > 64) malformed(cpath + ".power", "pole order above 64 is not supported");
      const double re = detail::require_number(coeffs[j], "re", cpath);
      const double im = detail::require_number(coeffs[j], "im", cpath);
      if (!data.emplace(static_cast<int>(power), cplx(re, im)).second)
        malformed(cpath + ".power", "duplicate power");
    }
    components.emplace_back(label.get<std::string>(), *mu, std::move(data));
  }
  try {
    return QHSpace(name.get<std::string>(), std::move(components), static_cast<int>(k));
  } catch (const InputError& e) {
    malformed("$.components", e.what());
  }
}

/// Canonical serialization: components sorted by label, coefficients by power.
inline std::string save_space(const QHSpace& space) {
  nlohmann::ordered_json doc;
  doc["name"] = space.name();
  doc["stabilizer_order"] = space.stabilizer_order();
  auto comps = nlohmann::ordered_json::array();
  for (const auto& f : space.components()) {
    nlohmann::ordered_json c;
    c["label"] = f.label();
    c["mu"] = f.mu().text();
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& [k, v] : f.euler_integral())
      coeffs.push_back({{"power", k}, {"re", v.real()}, {"im", v.imag()}});
    c["coefficients"] = std::move(coeffs);
    comps.push_back(std::move(c));
  }
  doc["components"] = std::move(comps);
  return doc.dump(2) + "\n";
}

inline QHSpace load_space_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open space file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_space(ss.str());
}

}  // namespace dhloc
