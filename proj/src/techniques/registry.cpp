// Copyright 2026 The Watchtower Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "watchtower/techniques/registry.hpp"

#include "watchtower/common/error.hpp"
#include "watchtower/techniques/techniques.hpp"

namespace watchtower::techniques {
namespace {

const json &single(const TechniqueInputs &inputs, const char *port)
{
  auto it = inputs.find(port);
  if (it == inputs.end() || it->second.size() != 1)
  {
    throw TechniqueError(std::string("input port '") + port + "' expects exactly one payload");
  }
  return it->second.front();
}

double number_param(const model::ParamMap &params, const char *name, double fallback)
{
  auto it = params.find(name);
  return it == params.end() || !it->second.is_number() ? fallback : it->second.get<double>();
}

std::optional<std::string> check_tolerance_params(const model::ParamMap &params)
{
  double yellow = number_param(params, "yellow", 0.1);
  double red    = number_param(params, "red", 0.2);
  if (yellow > red)
  {
    return "yellow limit must not exceed red limit";
  }
  if (auto it = params.find("mode"); it != params.end())
  {
    if (!it->second.is_string() || !tolerance_mode_from_string(it->second.get<std::string>()))
    {
      return "mode must be one of above-only, below-only, two-sided";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_status_date(const model::ParamMap &params)
{
  auto it = params.find("status_date");
  if (it == params.end() || !it->second.is_string() || !parse_date(it->second.get<std::string>()))
  {
    return "status_date must be a valid YYYY-MM-DD date";
  }
  return std::nullopt;
}

}  // namespace

void TechniqueRegistry::add(std::string key, Technique technique)
{
  techniques_.insert_or_assign(std::move(key), std::move(technique));
}

const Technique *TechniqueRegistry::find(std::string_view key) const
{
  auto it = techniques_.find(key);
  return it == techniques_.end() ? nullptr : &it->second;
}

bool TechniqueRegistry::has(std::string_view key) const
{
  return find(key) != nullptr;
}

std::optional<std::string> TechniqueRegistry::check_params(std::string_view key, const model::ParamMap &params) const
{
  auto const *t = find(key);
  if (!t || !t->check_params)
  {
    return std::nullopt;
  }
  return t->check_params(params);
}

std::vector<std::string> TechniqueRegistry::keys() const
{
  std::vector<std::string> out;
  for (auto const &[key, _] : techniques_)
  {
    out.push_back(key);
  }
  return out;
}

TechniqueRegistry builtin_techniques()
{
  TechniqueRegistry registry;

  registry.add(std::string(keys::aggregate_effort),
               {nullptr, [](const TechniqueInputs &in, const model::ParamMap &) {
                  auto hierarchy = hierarchy_from_body(single(in, "hierarchy"));
                  auto effort    = effort_from_body(single(in, "effort"));
                  return TechniqueOutputs{{"actual", to_body(aggregate_effort(effort, hierarchy))}};
                }});

  registry.add(std::string(keys::tolerance_check),
               {check_tolerance_params, [](const TechniqueInputs &in, const model::ParamMap &params) {
                  if (auto problem = check_tolerance_params(params))
                  {
                    throw TechniqueError(*problem);
                  }
                  ToleranceParams p;
                  p.yellow = number_param(params, "yellow", p.yellow);
                  p.red    = number_param(params, "red", p.red);
                  if (auto it = params.find("mode"); it != params.end())
                  {
                    p.mode = *tolerance_mode_from_string(it->second.get<std::string>());
                  }
                  auto actual   = metric_from_body(single(in, "actual"));
                  auto baseline = metric_from_body(single(in, "baseline"));
                  return TechniqueOutputs{{"indicators", to_body(tolerance_range_check(actual, baseline, p))}};
                }});

  registry.add(std::string(keys::earned_value),
               {check_status_date, [](const TechniqueInputs &in, const model::ParamMap &params) {
                  if (auto problem = check_status_date(params))
                  {
                    throw TechniqueError(*problem);
                  }
                  auto status    = *parse_date(params.at("status_date").get<std::string>());
                  auto hierarchy = hierarchy_from_body(single(in, "hierarchy"));
                  auto progress  = metric_from_body(single(in, "progress"));
                  auto cost      = metric_from_body(single(in, "actual_cost"));
                  EvaReport report;
                  report.rows.push_back(earned_value_analysis(hierarchy, progress, cost, status));
                  return TechniqueOutputs{{"report", to_body(report)}};
                }});

  registry.add(std::string(keys::milestone_trend),
               {nullptr, [](const TechniqueInputs &in, const model::ParamMap &params) {
                  auto forecasts = forecasts_from_body(single(in, "forecasts"));
                  auto band      = number_param(params, "dead_band", kTrendDeadBand);
                  return TechniqueOutputs{{"trend", to_body(milestone_trend_analysis(forecasts, band))}};
                }});

  registry.add(std::string(keys::scale_series),
               {nullptr, [](const TechniqueInputs &in, const model::ParamMap &params) {
                  auto series = series_from_body(single(in, "series"));
                  return TechniqueOutputs{
                      {"scaled", to_body(scale_time_series(series, number_param(params, "factor", 1.0)))}};
                }});

  registry.add(std::string(keys::effort_to_series),
               {nullptr, [](const TechniqueInputs &in, const model::ParamMap &params) {
                  auto effort = effort_from_body(single(in, "effort"));
                  auto days   = static_cast<int>(number_param(params, "bucket_days", 1.0));
                  return TechniqueOutputs{
                      {"series", to_body(effort_to_time_series(effort, std::chrono::days{days}))}};
                }});

  return registry;
}

}  // namespace watchtower::techniques
