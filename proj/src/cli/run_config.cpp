// Copyright 2026 The medforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medforge/cli/run_config.hpp"

#include "medforge/common/error.hpp"
#include "medforge/common/files.hpp"

namespace medforge::cli {

namespace fs = std::filesystem;

bool RunConfig::HasEndpoint(const std::string& role) const { return endpoints.count(role) > 0; }

gateway::EndpointConfig RunConfig::Endpoint(const std::string& role) const {
  auto it = endpoints.find(role);
  if (it != endpoints.end()) return it->second;
  if (!force_mock) throw Error(Errc::kInvalidConfig, "no endpoint configured for role '" + role + "'");
  gateway::EndpointConfig c;
  c.endpoint_id = "mock-" + role;
  c.model_name = "mock";
  c.backend = "mock";
  return c;
}

forge::ForgeConfig RunConfig::Forge() const {
  forge::ForgeConfig f;
  for (const char* role : {"stage1", "stage2", "stage3", "stage4", "stage5"}) f.endpoints[role] = Endpoint(role);
  f.sampling = sampling;
  f.seed = seed;
  f.quotas = task_mix;
  f.leakage_ngram = leakage_ngram;
  f.max_refinements = max_refinements;
  f.stage3_tolerance = stage3_tolerance;
  f.spatial_tau = spatial_tau;
  f.workers = workers;
  return f;
}

gateway::GatewayOptions RunConfig::Gateway() const {
  gateway::GatewayOptions o;
  o.cache_dir = cache_dir;
  o.force_mock = force_mock;
  o.mock = mock;
  return o;
}

nlohmann::json RunConfig::ToJson() const {
  nlohmann::json eps = nlohmann::json::object();
  for (const auto& [role, e] : endpoints) eps[role] = gateway::ToJson(e);
  nlohmann::json mix = nlohmann::json::object();
  for (const auto& [t, n] : task_mix) mix[std::string(forge::TaskTypeName(t))] = n;
  return {{"corpus_dir", corpus_dir.string()},
          {"output_dir", output_dir.string()},
          {"cache_dir", cache_dir.string()},
          {"checkpoint_dir", checkpoint_dir.string()},
          {"endpoints", eps},
          {"gates",
           {{"caption_words", gates.caption_words_exceed},
            {"sub_caption_words", gates.sub_caption_min_words},
            {"medical_ratio", gates.medical_ratio_exceed},
            {"license_allowlist", gates.license_allowlist}}},
          {"workers", workers},
          {"seed", seed},
          {"task_mix", mix},
          {"sampling", {{"temperature", sampling.temperature}, {"max_tokens", sampling.max_tokens}}},
          {"leakage", {{"ngram", leakage_ngram}, {"max_refinements", max_refinements}}},
          {"stage3_tolerance", stage3_tolerance},
          {"spatial_tau", spatial_tau},
          {"benchmark", benchmark.ToJson()},
          {"icc_model", std::string(quality::IccModelName(icc_model))}};
}

void Validate(const RunConfig& c) {
  if (c.workers < 1) throw Error(Errc::kInvalidConfig, "workers must be >= 1");
  std::map<std::string, std::string> seen;
  const std::pair<const char*, const fs::path*> dirs[] = {{"corpus_dir", &c.corpus_dir},
                                                          {"output_dir", &c.output_dir},
                                                          {"cache_dir", &c.cache_dir},
                                                          {"checkpoint_dir", &c.checkpoint_dir}};
  for (const auto& [name, path] : dirs) {
    if (path->empty()) continue;
    const auto key = fs::weakly_canonical(fs::absolute(*path)).lexically_normal().generic_string();
    auto [it, fresh] = seen.emplace(key, name);
    if (!fresh) {
      throw Error(Errc::kInvalidConfig, std::string(name) + " and " + it->second + " name the same directory",
                  {{"path", key}});
    }
  }
  for (const auto& [role, e] : c.endpoints) gateway::Validate(e);
  for (const auto& [t, n] : c.task_mix) {
    if (n < 0) throw Error(Errc::kInvalidConfig, "task_mix counts must be >= 0");
  }
  if (c.gates.license_allowlist.empty()) throw Error(Errc::kInvalidConfig, "license_allowlist is empty");
}

RunConfig RunConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::kInvalidConfig, "config must be a JSON object");
  RunConfig c;
  try {
    c.corpus_dir = j.value("corpus_dir", "");
    c.output_dir = j.value("output_dir", "");
    c.cache_dir = j.value("cache_dir", "");
    c.checkpoint_dir = j.value("checkpoint_dir", "");
    if (j.contains("endpoints")) {
      for (const auto& [role, e] : j["endpoints"].items()) {
        bool known = false;
        for (const char* r : kRoles) known = known || role == r;
        if (!known) throw Error(Errc::kInvalidConfig, "unknown endpoint role '" + role + "'");
        c.endpoints[role] = gateway::EndpointFromJson(e);
      }
    }
    if (j.contains("gates")) {
      const auto& g = j["gates"];
      c.gates.caption_words_exceed = g.value("caption_words", c.gates.caption_words_exceed);
      c.gates.sub_caption_min_words = g.value("sub_caption_words", c.gates.sub_caption_min_words);
      c.gates.medical_ratio_exceed = g.value("medical_ratio", c.gates.medical_ratio_exceed);
      if (g.contains("license_allowlist")) c.gates.license_allowlist = g["license_allowlist"].get<std::set<std::string>>();
    }
    const auto workers = j.value("workers", 1);
    if (workers < 1) throw Error(Errc::kInvalidConfig, "workers must be >= 1");
    c.workers = static_cast<std::size_t>(workers);
    c.seed = j.value("seed", std::uint64_t{0});
    if (j.contains("task_mix")) {
      for (const auto& [name, n] : j["task_mix"].items()) {
        auto t = forge::TaskTypeFromName(name);
        if (!t) throw Error(Errc::kInvalidConfig, "unknown task type '" + name + "' in task_mix");
        c.task_mix[*t] = n.get<int>();
      }
    }
    if (j.contains("sampling")) {
      c.sampling.temperature = j["sampling"].value("temperature", c.sampling.temperature);
      c.sampling.max_tokens = j["sampling"].value("max_tokens", c.sampling.max_tokens);
    }
    if (j.contains("leakage")) {
      c.leakage_ngram = j["leakage"].value("ngram", c.leakage_ngram);
      c.max_refinements = j["leakage"].value("max_refinements", c.max_refinements);
    }
    c.stage3_tolerance = j.value("stage3_tolerance", c.stage3_tolerance);
    c.spatial_tau = j.value("spatial_tau", c.spatial_tau);
    if (j.contains("benchmark")) c.benchmark = bench::BenchmarkSpecFromJson(j["benchmark"]);
    if (j.contains("icc_model")) c.icc_model = quality::IccModelFromName(j["icc_model"].get<std::string>());
    if (j.contains("mock")) c.mock = gateway::MockOptions::FromJson(j["mock"]);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidConfig, std::string("config: ") + e.what());
  }
  c.benchmark.seed = j.contains("benchmark") && j["benchmark"].contains("seed") ? c.benchmark.seed : c.seed;
  Validate(c);
  return c;
}

RunConfig LoadRunConfig(const fs::path& path) {
  auto j = nlohmann::json::parse(files::ReadText(path), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::kInvalidConfig, path.string() + " is not valid JSON");
  return RunConfigFromJson(j);
}

}  // namespace medforge::cli
