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

#include "watchtower/gqm/compose.hpp"

#include "watchtower/model/catena_io.hpp"

#include <algorithm>
#include <tuple>

namespace watchtower::gqm {
namespace {

using model::ComponentRegistry;
using model::FunctionSpec;
using model::ViewSpec;

std::size_t tag_overlap(const std::set<std::string> &tags, const std::vector<std::string> &desired)
{
  return std::count_if(desired.begin(), desired.end(), [&](auto const &t) { return tags.count(t) > 0; });
}

template <typename Spec>
const model::PortSpec *port_accepting(const Spec &spec, const std::string &type)
{
  for (auto const &port : spec.inputs)
  {
    if (port.data_type == type)
    {
      return &port;
    }
  }
  return nullptr;
}

bool has_unsatisfiable_param(const FunctionSpec &spec)
{
  return std::any_of(spec.params.begin(), spec.params.end(), [](auto const &p) { return p.required(); });
}

struct Step
{
  const FunctionSpec *spec;
  std::string         in_port;   // port receiving the upstream value
  std::string         out_port;  // port passed downstream
};

struct Chain
{
  std::vector<Step> steps;
  std::size_t       coverage = 0;
  std::uint64_t     reuse    = 0;
  std::string       key;  // ids joined, for the final tie-break

  std::string output_type(const std::string &start) const
  {
    return steps.empty() ? start : steps.back().spec->output(steps.back().out_port)->data_type;
  }
};

std::uint64_t reuse_of(const std::map<std::string, std::uint64_t> &reuse, const std::string &id)
{
  auto it = reuse.find(id);
  return it == reuse.end() ? 0 : it->second;
}

std::vector<Chain> candidate_chains(const Metric &metric, const ComponentRegistry &registry,
                                    const std::map<std::string, std::uint64_t> &reuse)
{
  std::vector<Chain> chains;
  auto finish = [&](Chain chain) {
    std::set<std::string> tags;
    for (auto const &step : chain.steps)
    {
      tags.insert(step.spec->tags.begin(), step.spec->tags.end());
      chain.reuse += reuse_of(reuse, step.spec->id);
      chain.key += (chain.key.empty() ? "" : ">") + step.spec->id;
    }
    chain.coverage = tag_overlap(tags, metric.technique_tags);
    chains.push_back(std::move(chain));
  };

  if (metric.technique_tags.empty())
  {
    finish({});
  }
  for (auto const &[id1, f1] : registry.functions)
  {
    auto const *in1 = port_accepting(f1, metric.data_type);
    if (!in1)
    {
      continue;
    }
    for (auto const &out1 : f1.outputs)
    {
      finish(Chain{{{&f1, in1->name, out1.name}}, 0, 0, {}});
      for (auto const &[id2, f2] : registry.functions)
      {
        auto const *in2 = port_accepting(f2, out1.data_type);
        if (id2 == id1 || !in2)
        {
          continue;
        }
        for (auto const &out2 : f2.outputs)
        {
          finish(Chain{{{&f1, in1->name, out1.name}, {&f2, in2->name, out2.name}}, 0, 0, {}});
        }
      }
    }
  }
  if (!metric.technique_tags.empty())
  {
    std::erase_if(chains, [](auto const &c) { return c.coverage == 0; });
  }
  std::sort(chains.begin(), chains.end(), [](auto const &a, auto const &b) {
    return std::make_tuple(-static_cast<long>(a.coverage), a.steps.size(), -static_cast<long long>(a.reuse), a.key) <
           std::make_tuple(-static_cast<long>(b.coverage), b.steps.size(), -static_cast<long long>(b.reuse), b.key);
  });
  return chains;
}

const ViewSpec *select_view(const Metric &metric, const std::string &type, const ComponentRegistry &registry,
                            const std::map<std::string, std::uint64_t> &reuse)
{
  auto pick = [&](model::RenderKind kind) -> const ViewSpec * {
    const ViewSpec *best = nullptr;
    auto rank = [&](const ViewSpec &v) {
      std::set<std::string> tags(v.tags.begin(), v.tags.end());
      return std::make_tuple(-static_cast<long>(tag_overlap(tags, metric.technique_tags)),
                             -static_cast<long long>(reuse_of(reuse, v.id)), v.id);
    };
    for (auto const &[id, view] : registry.views)
    {
      if (view.render == kind && port_accepting(view, type) && (!best || rank(view) < rank(*best)))
      {
        best = &view;
      }
    }
    return best;
  };
  if (metric.view_kind)
  {
    if (auto const *view = pick(*metric.view_kind))
    {
      return view;
    }
  }
  return pick(model::RenderKind::table);
}

class Builder
{
public:
  Builder(const ComponentRegistry &registry, const std::map<std::string, std::uint64_t> &reuse,
          model::VisualizationCatena &catena)
    : registry_(registry)
    , reuse_(reuse)
    , catena_(catena)
  {}

  /// Form-managed entry shared by every port of this name and type.
  std::string aux_entry(const model::PortSpec &port)
  {
    auto id = "e." + port.name;
    if (auto const *existing = catena_.entry(id); existing && existing->data_type != port.data_type)
    {
      id += "." + port.data_type;
    }
    ensure_entry(id, port.data_type);
    return id;
  }

  void ensure_entry(const std::string &id, const std::string &type)
  {
    if (!catena_.entry(id))
    {
      catena_.entries.push_back({id, type, model::FormSource{}});
    }
  }

  template <typename Spec>
  model::PortBindings bind(const Spec &spec, const std::string &fed_port, const std::string &fed_entry)
  {
    model::PortBindings bindings;
    for (auto const &port : spec.inputs)
    {
      bindings[port.name] = {port.name == fed_port ? fed_entry : aux_entry(port)};
    }
    return bindings;
  }

  /// Greedy: repeatedly instantiate the form spec covering most uncovered
  /// form-managed entries (at most one entry per target type per instance).
  void add_forms()
  {
    std::set<std::string> covered;
    for (auto const &form : catena_.forms)
    {
      covered.insert(form.entries.begin(), form.entries.end());
    }
    for (;;)
    {
      std::vector<std::string> best_entries;
      const model::WebFormSpec *best = nullptr;
      for (auto const &[id, spec] : registry_.forms)
      {
        std::vector<std::string> entries;
        std::set<std::string>    types;
        for (auto const &entry : catena_.entries)
        {
          bool target = std::find(spec.targets.begin(), spec.targets.end(), entry.data_type) != spec.targets.end();
          if (entry.is_form_managed() && !covered.count(entry.id) && target && types.insert(entry.data_type).second)
          {
            entries.push_back(entry.id);
          }
        }
        if (entries.empty())
        {
          continue;
        }
        auto better = [&] {
          if (!best || entries.size() != best_entries.size())
          {
            return !best || entries.size() > best_entries.size();
          }
          auto r1 = reuse_of(reuse_, spec.id), r2 = reuse_of(reuse_, best->id);
          return r1 != r2 ? r1 > r2 : spec.id < best->id;
        };
        if (better())
        {
          best         = &spec;
          best_entries = std::move(entries);
        }
      }
      if (!best)
      {
        return;
      }
      auto id = "w." + best->id;
      for (int n = 2; catena_.form(id); ++n)
      {
        id = "w." + best->id + "." + std::to_string(n);
      }
      std::sort(best_entries.begin(), best_entries.end());
      catena_.forms.push_back({id, best->id, best_entries, {}});
      covered.insert(best_entries.begin(), best_entries.end());
    }
  }

private:
  const ComponentRegistry                    &registry_;
  const std::map<std::string, std::uint64_t> &reuse_;
  model::VisualizationCatena                 &catena_;
};

}  // namespace

json CompositionResult::to_json() const
{
  json cov = json::object();
  for (auto const &[metric, c] : coverage)
  {
    cov[metric] = {{"matched", c.matched}, {"components", c.components}, {"missing", c.missing}};
  }
  return json{{"candidate", model::catena_to_json(candidate)}, {"coverage", std::move(cov)}, {"goals", goals}};
}

CompositionResult compose_catena(const GqmPlan &plan, const model::ComponentRegistry &registry,
                                 const std::map<std::string, std::uint64_t> &reuse, const ProjectContext &context)
{
  CompositionResult result;
  auto             &catena = result.candidate;
  catena.meta.id           = context.catena.empty() ? context.project + ".candidate" : context.catena;
  catena.meta.project      = context.project;
  catena.meta.roles        = context.roles;
  Builder builder(registry, reuse, catena);

  for (auto const &metric : plan.metrics)
  {
    auto &coverage = result.coverage[metric.id];
    if (!registry.data_type(metric.data_type))
    {
      coverage.missing.emplace_back("data-type");
      continue;
    }
    auto chains = candidate_chains(metric, registry, reuse);
    if (chains.empty())
    {
      coverage.missing.emplace_back("function");
      continue;
    }
    const Chain    *chosen  = nullptr;
    const ViewSpec *view    = nullptr;
    bool            blocked = false;
    for (auto const &chain : chains)
    {
      if (std::any_of(chain.steps.begin(), chain.steps.end(),
                      [](auto const &s) { return has_unsatisfiable_param(*s.spec); }))
      {
        blocked = true;
        continue;
      }
      view = select_view(metric, chain.output_type(metric.data_type), registry, reuse);
      if (view)
      {
        chosen = &chain;
        break;
      }
    }
    if (!chosen)
    {
      coverage.missing.emplace_back(blocked ? "parameter" : "view");
      continue;
    }

    auto entry = "e." + metric.id;
    builder.ensure_entry(entry, metric.data_type);
    std::string current = entry;
    int         n       = 0;
    for (auto const &step : chosen->steps)
    {
      model::FunctionInstance fn;
      fn.id     = "f." + metric.id + "." + std::to_string(++n);
      fn.spec   = step.spec->id;
      fn.inputs = builder.bind(*step.spec, step.in_port, current);
      for (auto const &out : step.spec->outputs)
      {
        fn.outputs[out.name] = fn.id + "." + out.name;
        catena.entries.push_back({fn.id + "." + out.name, out.data_type, model::DerivedSource{fn.id, out.name}});
      }
      current = fn.outputs[step.out_port];
      coverage.components.push_back(step.spec->id);
      catena.functions.push_back(std::move(fn));
    }
    model::ViewInstance vi;
    vi.id     = "v." + metric.id;
    vi.spec   = view->id;
    vi.inputs = builder.bind(*view, port_accepting(*view, chosen->output_type(metric.data_type))->name, current);
    if (auto const *goal = plan.goal_of(metric); goal && !goal->viewpoint.empty())
    {
      vi.visible_to.insert(goal->viewpoint);
      catena.meta.roles.insert(goal->viewpoint);
    }
    coverage.components.push_back(view->id);
    coverage.matched = true;
    catena.views.push_back(std::move(vi));
  }
  builder.add_forms();

  for (auto const &goal : plan.goals)
  {
    std::size_t total = 0, matched = 0;
    for (auto const &metric : plan.metrics)
    {
      if (auto const *g = plan.goal_of(metric); g && g->id == goal.id)
      {
        ++total;
        matched += result.coverage[metric.id].matched ? 1 : 0;
      }
    }
    result.goals[goal.id] = total == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(total);
  }
  return result;
}

}  // namespace watchtower::gqm
