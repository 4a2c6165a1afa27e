#pragma once

// nlohmann/json bindings for the library types. Private to the core library.

#include <json.hpp>
#include <string>

#include "foloc/error.hpp"
#include "foloc/locator.hpp"
#include "foloc/mecf.hpp"
#include "foloc/simulator.hpp"

namespace foloc::detail {

using nlohmann::json;

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config field '") + key + "': " + e.what());
  }
}

inline json to_json(const FOSource& s) {
  return {{"node", s.node}, {"gamma", s.gamma}, {"f", s.f}, {"phase", s.phase}};
}

inline FOSource source_from_json(const json& j) {
  if (!j.is_object() || !j.contains("node")) throw InvalidInput("source entry needs a 'node'");
  FOSource s;
  s.node = get_or<std::size_t>(j, "node", 0);
  s.gamma = get_or<double>(j, "gamma", s.gamma);
  s.f = get_or<double>(j, "f", s.f);
  s.phase = get_or<double>(j, "phase", s.phase);
  return s;
}

inline json to_json(const ScenarioConfig& c) {
  json sources = json::array();
  for (const auto& s : c.sources) sources.push_back(to_json(s));
  return {{"sources", sources},
          {"sigma", c.sigma},
          {"duration", c.duration},
          {"dt", c.dt},
          {"seed", c.seed},
          {"model_kind", std::string(to_string(c.model_kind))},
          {"noise_mode", std::string(to_string(c.noise_mode))},
          {"scale_forcing_by_inertia", c.scale_forcing_by_inertia}};
}

/// Fills `c` from the keys present in `j`, leaving the others untouched.
inline void merge_scenario(const json& j, ScenarioConfig& c) {
  if (!j.is_object()) throw InvalidInput("scenario must be a JSON object");
  if (j.contains("sources") && j.at("sources").is_array()) {
    c.sources.clear();
    for (const auto& s : j.at("sources")) c.sources.push_back(source_from_json(s));
  }
  c.sigma = get_or<double>(j, "sigma", c.sigma);
  c.duration = get_or<double>(j, "duration", c.duration);
  c.dt = get_or<double>(j, "dt", c.dt);
  c.seed = get_or<std::uint64_t>(j, "seed", c.seed);
  if (j.contains("model_kind")) {
    c.model_kind = parse_model_kind(get_or<std::string>(j, "model_kind", "linear"));
  }
  if (j.contains("noise_mode")) {
    c.noise_mode = parse_noise_mode(get_or<std::string>(j, "noise_mode", "process"));
  }
  c.scale_forcing_by_inertia = get_or<bool>(j, "scale_forcing_by_inertia", c.scale_forcing_by_inertia);
}

inline json to_json(const MECFParams& p) {
  json j = {{"m", p.m}, {"tau", p.tau}, {"n", p.n}, {"d_max_ceiling", p.d_max_ceiling}};
  if (p.d_max) {
    j["d_max"] = *p.d_max;
  } else {
    j["d_max"] = "auto";
  }
  return j;
}

inline void merge_mecf(const json& j, MECFParams& p) {
  if (!j.is_object()) throw InvalidInput("mecf must be a JSON object");
  p.m = get_or<std::size_t>(j, "m", p.m);
  p.tau = get_or<std::size_t>(j, "tau", p.tau);
  p.n = get_or<std::size_t>(j, "n", p.n);
  p.d_max_ceiling = get_or<std::size_t>(j, "d_max_ceiling", p.d_max_ceiling);
  if (j.contains("d_max")) {
    const auto& d = j.at("d_max");
    if (d.is_string()) {
      if (d.get<std::string>() != "auto") throw InvalidInput("mecf.d_max must be an integer or \"auto\"");
      p.d_max.reset();
    } else if (d.is_number_unsigned() || d.is_number_integer()) {
      p.d_max = d.get<std::size_t>();
    } else if (!d.is_null()) {
      throw InvalidInput("mecf.d_max must be an integer or \"auto\"");
    }
  }
}

inline json to_json(const LocatorOptions& o) {
  return {{"perplexity", o.tsne.perplexity},
          {"iterations", o.tsne.iterations},
          {"learning_rate", o.tsne.learning_rate},
          {"early_exaggeration", o.tsne.early_exaggeration},
          {"normalize_first", o.normalize_first},
          {"threshold_k", o.threshold_k},
          {"std_convention", "population"}};
}

inline void merge_locator(const json& j, LocatorOptions& o) {
  if (!j.is_object()) throw InvalidInput("locator must be a JSON object");
  o.tsne.perplexity = get_or<double>(j, "perplexity", o.tsne.perplexity);
  o.tsne.iterations = get_or<int>(j, "iterations", o.tsne.iterations);
  o.tsne.learning_rate = get_or<double>(j, "learning_rate", o.tsne.learning_rate);
  o.tsne.early_exaggeration = get_or<double>(j, "early_exaggeration", o.tsne.early_exaggeration);
  o.normalize_first = get_or<bool>(j, "normalize_first", o.normalize_first);
  o.threshold_k = get_or<double>(j, "threshold_k", o.threshold_k);
}

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace foloc::detail
