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

#include "watchtower/model/validation.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace watchtower::model {
namespace {

class Checker
{
public:
  Checker(const VisualizationCatena &catena, const ComponentRegistry &registry,
          const ImplementationCatalog *catalog)
    : catena_(catena)
    , registry_(registry)
    , catalog_(catalog)
  {}

  ValidationReport run()
  {
    check_ids();
    for (auto const &entry : catena_.entries)
    {
      check_entry(entry);
    }
    for (auto const &fn : catena_.functions)
    {
      check_function(fn);
    }
    for (auto const &view : catena_.views)
    {
      check_view(view);
    }
    for (auto const &form : catena_.forms)
    {
      check_form(form);
    }
    check_function_cycles();
    check_view_cycles();

    std::sort(report_.diagnostics.begin(), report_.diagnostics.end(),
              [](const Diagnostic &a, const Diagnostic &b) {
                return std::tie(a.subject, a.code, a.message, a.severity) <
                       std::tie(b.subject, b.code, b.message, b.severity);
              });
    report_.diagnostics.erase(std::unique(report_.diagnostics.begin(), report_.diagnostics.end()),
                              report_.diagnostics.end());
    return std::move(report_);
  }

private:
  void error(const std::string &subject, const std::string &code, const std::string &message)
  {
    report_.diagnostics.push_back({Severity::error, subject, code, message});
  }

  template <typename Items>
  void check_unique(const Items &items, const char *what)
  {
    std::set<std::string> seen;
    for (auto const &item : items)
    {
      if (!is_valid_id(item.id))
      {
        error(item.id, "invalid id", std::string(what) + " id '" + item.id + "' must match [A-Za-z0-9._-]+");
      }
      if (!seen.insert(item.id).second)
      {
        error(item.id, "duplicate id", std::string("duplicate ") + what + " id '" + item.id + "'");
      }
    }
  }

  void check_ids()
  {
    if (!is_valid_id(catena_.meta.id))
    {
      error(catena_.meta.id, "invalid id", "catena id '" + catena_.meta.id + "' must match [A-Za-z0-9._-]+");
    }
    check_unique(catena_.entries, "data entry");
    check_unique(catena_.functions, "function instance");
    check_unique(catena_.views, "view instance");
    check_unique(catena_.forms, "web form instance");
  }

  void check_entry(const DataEntry &entry)
  {
    if (!registry_.data_type(entry.data_type))
    {
      error(entry.id, "unresolved reference", "data type '" + entry.data_type + "' is not registered");
    }
    if (auto const *dao = entry.dao())
    {
      auto const *pkg = registry_.dao(dao->package);
      if (!pkg)
      {
        error(entry.id, "unresolved reference", "dao package '" + dao->package + "' is not registered");
      }
      else
      {
        auto const &types = pkg->supported_types;
        if (std::find(types.begin(), types.end(), entry.data_type) == types.end())
        {
          error(entry.id, "unsupported type",
                "dao package '" + pkg->id + "' does not support data type '" + entry.data_type + "'");
        }
        check_connection(entry.id, *pkg, dao->connection);
        if (pkg->access == AccessMode::pull && dao->window.interval.count() <= 0)
        {
          error(entry.id, "invalid window", "pull interval must be positive");
        }
      }
      if (dao->window.start > dao->window.end)
      {
        error(entry.id, "invalid window", "collection window start is after its end");
      }
    }
    else if (auto const *derived = std::get_if<DerivedSource>(&entry.source))
    {
      auto const *producer = catena_.function(derived->function);
      bool        produced = false;
      if (producer)
      {
        auto it  = producer->outputs.find(derived->port);
        produced = it != producer->outputs.end() && it->second == entry.id;
      }
      if (!produced)
      {
        error(entry.id, "output mismatch",
              "derived entry is not produced by '" + derived->function + "." + derived->port + "'");
      }
    }
  }

  void check_connection(const std::string &subject, const DaoPackageSpec &pkg, const json &connection)
  {
    if (!connection.is_object())
    {
      error(subject, "constraint violation", "connection parameters must be an object");
      return;
    }
    for (auto const &param : pkg.connection)
    {
      auto it = connection.find(param.name);
      if (it == connection.end())
      {
        if (param.required())
        {
          error(subject, "missing parameter", "connection parameter '" + param.name + "' is required");
        }
        continue;
      }
      if (auto problem = check_param_value(param, *it))
      {
        error(subject, "constraint violation", "connection parameter '" + param.name + "': " + *problem);
      }
    }
    for (auto it = connection.begin(); it != connection.end(); ++it)
    {
      bool known = std::any_of(pkg.connection.begin(), pkg.connection.end(),
                               [&](auto const &p) { return p.name == it.key(); });
      if (!known)
      {
        error(subject, "unknown parameter", "connection parameter '" + it.key() + "' is not declared");
      }
    }
  }

  void check_inputs(const std::string &subject, const std::vector<PortSpec> &ports, const PortBindings &bindings)
  {
    for (auto const &port : ports)
    {
      if (!registry_.data_type(port.data_type))
      {
        error(subject, "unresolved reference",
              "port '" + port.name + "' requires unregistered data type '" + port.data_type + "'");
      }
      auto it = bindings.find(port.name);
      if (it == bindings.end() || it->second.empty())
      {
        error(subject, "unbound port", "input port '" + port.name + "' is not bound");
        continue;
      }
      if (port.arity == Arity::one && it->second.size() != 1)
      {
        error(subject, "arity", "input port '" + port.name + "' accepts exactly one entry");
      }
      for (auto const &entry_id : it->second)
      {
        auto const *entry = catena_.entry(entry_id);
        if (!entry)
        {
          error(subject, "unresolved reference", "port '" + port.name + "' binds unknown entry '" + entry_id + "'");
          continue;
        }
        if (entry->data_type != port.data_type)
        {
          error(subject, "type mismatch",
                "port '" + port.name + "' requires '" + port.data_type + "' but entry '" + entry_id + "' is '" +
                    entry->data_type + "'");
        }
      }
    }
    for (auto const &[name, ids] : bindings)
    {
      bool known = std::any_of(ports.begin(), ports.end(), [&](auto const &p) { return p.name == name; });
      if (!known)
      {
        error(subject, "unknown port", "port '" + name + "' is not declared by the spec");
      }
    }
  }

  bool check_params(const std::string &subject, const std::vector<ParamSpec> &specs, const ParamMap &params)
  {
    bool ok = true;
    for (auto const &[name, value] : params)
    {
      auto it = std::find_if(specs.begin(), specs.end(), [&](auto const &p) { return p.name == name; });
      if (it == specs.end())
      {
        error(subject, "unknown parameter", "parameter '" + name + "' is not declared by the spec");
        ok = false;
      }
      else if (auto problem = check_param_value(*it, value))
      {
        error(subject, "constraint violation", "parameter '" + name + "': " + *problem);
        ok = false;
      }
    }
    for (auto const &spec : specs)
    {
      if (spec.required() && !params.count(spec.name))
      {
        error(subject, "missing parameter", "parameter '" + spec.name + "' has no default and is not supplied");
        ok = false;
      }
    }
    return ok;
  }

  void check_function(const FunctionInstance &fn)
  {
    auto const *spec = registry_.function(fn.spec);
    if (!spec)
    {
      error(fn.id, "unresolved reference", "function spec '" + fn.spec + "' is not registered");
      return;
    }
    if (catalog_ && !catalog_->has(spec->implementation))
    {
      error(fn.id, "unresolved reference", "implementation '" + spec->implementation + "' is not available");
    }
    check_inputs(fn.id, spec->inputs, fn.inputs);
    if (check_params(fn.id, spec->params, fn.params) && catalog_ && catalog_->has(spec->implementation))
    {
      if (auto problem = catalog_->check_params(spec->implementation, effective_params(spec->params, fn.params)))
      {
        error(fn.id, "constraint violation", *problem);
      }
    }
    for (auto const &port : spec->outputs)
    {
      auto it = fn.outputs.find(port.name);
      if (it == fn.outputs.end())
      {
        error(fn.id, "unbound port", "output port '" + port.name + "' has no derived entry");
        continue;
      }
      auto const *entry = catena_.entry(it->second);
      if (!entry)
      {
        error(fn.id, "unresolved reference", "output port '" + port.name + "' maps to unknown entry '" + it->second + "'");
        continue;
      }
      auto const *derived = std::get_if<DerivedSource>(&entry->source);
      if (!derived || derived->function != fn.id || derived->port != port.name)
      {
        error(fn.id, "output mismatch", "entry '" + entry->id + "' is not derived from port '" + port.name + "'");
      }
      if (entry->data_type != port.data_type)
      {
        error(fn.id, "type mismatch",
              "output port '" + port.name + "' produces '" + port.data_type + "' but entry '" + entry->id +
                  "' is '" + entry->data_type + "'");
      }
    }
    for (auto const &[port, entry_id] : fn.outputs)
    {
      if (!spec->output(port))
      {
        error(fn.id, "unknown port", "output port '" + port + "' is not declared by the spec");
      }
    }
  }

  void check_view(const ViewInstance &view)
  {
    auto const *spec = registry_.view(view.spec);
    if (!spec)
    {
      error(view.id, "unresolved reference", "view spec '" + view.spec + "' is not registered");
      return;
    }
    check_inputs(view.id, spec->inputs, view.inputs);
    check_params(view.id, spec->params, view.params);
    for (auto const &[slot_name, child_id] : view.children)
    {
      auto const *slot = spec->slot(slot_name);
      if (!slot)
      {
        error(view.id, "slot", "view spec has no child slot '" + slot_name + "'");
        continue;
      }
      auto const *child = catena_.view(child_id);
      if (!child)
      {
        error(view.id, "unresolved reference", "slot '" + slot_name + "' refers to unknown view '" + child_id + "'");
        continue;
      }
      if (!slot->accepts.empty() &&
          std::find(slot->accepts.begin(), slot->accepts.end(), child->spec) == slot->accepts.end())
      {
        error(view.id, "slot", "slot '" + slot_name + "' does not accept view spec '" + child->spec + "'");
      }
    }
  }

  void check_form(const WebFormInstance &form)
  {
    auto const *spec = registry_.form(form.spec);
    if (!spec)
    {
      error(form.id, "unresolved reference", "web form spec '" + form.spec + "' is not registered");
      return;
    }
    if (form.entries.empty())
    {
      error(form.id, "form binding", "web form instance binds no data entries");
    }
    std::vector<const DataTypeDescriptor *> bound_types;
    for (auto const &entry_id : form.entries)
    {
      auto const *entry = catena_.entry(entry_id);
      if (!entry)
      {
        error(form.id, "unresolved reference", "bound entry '" + entry_id + "' does not exist");
        continue;
      }
      if (!entry->is_form_managed())
      {
        error(form.id, "form binding", "bound entry '" + entry_id + "' is not form-managed");
      }
      auto const &targets = spec->targets;
      if (std::find(targets.begin(), targets.end(), entry->data_type) == targets.end())
      {
        error(form.id, "type mismatch", "form does not target data type '" + entry->data_type + "' of entry '" +
                                            entry_id + "'");
      }
      if (auto const *type = registry_.data_type(entry->data_type))
      {
        bound_types.push_back(type);
      }
    }
    if (spec->mode != FormMode::manual_entry)
    {
      if (!form.field_bindings.empty())
      {
        error(form.id, "form binding", "field bindings are only meaningful for manual-entry forms");
      }
      return;
    }
    for (auto const &[field, target] : form.field_bindings)
    {
      if (!spec->field(field))
      {
        error(form.id, "form binding", "form field '" + field + "' is not in the form layout");
      }
    }
    for (auto const &field : spec->layout)
    {
      auto        it     = form.field_bindings.find(field.name);
      auto const &target = it == form.field_bindings.end() ? field.name : it->second;
      for (auto const *type : bound_types)
      {
        bool found = std::any_of(type->schema.begin(), type->schema.end(),
                                 [&](auto const &f) { return f.name == target; });
        if (!found)
        {
          error(form.id, "form binding",
                "form field '" + field.name + "' maps to '" + target + "' which is not in schema '" + type->id + "'");
        }
      }
    }
  }

  // Tarjan over the function-instance dependency relation.
  void check_function_cycles()
  {
    std::map<std::string, std::set<std::string>> succ;
    for (auto const &fn : catena_.functions)
    {
      succ[fn.id];
      for (auto const &[port, ids] : fn.inputs)
      {
        for (auto const &entry_id : ids)
        {
          auto const *entry = catena_.entry(entry_id);
          if (!entry)
          {
            continue;
          }
          if (auto const *d = std::get_if<DerivedSource>(&entry->source); d && catena_.function(d->function))
          {
            succ[d->function].insert(fn.id);
          }
        }
      }
    }
    report_cycles(succ, "function instance");
  }

  void check_view_cycles()
  {
    std::map<std::string, std::set<std::string>> succ;
    for (auto const &view : catena_.views)
    {
      succ[view.id];
      for (auto const &[slot, child] : view.children)
      {
        if (catena_.view(child))
        {
          succ[view.id].insert(child);
        }
      }
    }
    report_cycles(succ, "view instance");
  }

  void report_cycles(const std::map<std::string, std::set<std::string>> &succ, const char *what)
  {
    std::map<std::string, int> index;
    std::map<std::string, int> low;
    std::set<std::string>      on_stack;
    std::vector<std::string>   stack;
    int                        counter = 0;

    std::function<void(const std::string &)> connect = [&](const std::string &v) {
      index[v] = low[v] = counter++;
      stack.push_back(v);
      on_stack.insert(v);
      for (auto const &w : succ.at(v))
      {
        if (!index.count(w))
        {
          connect(w);
          low[v] = std::min(low[v], low[w]);
        }
        else if (on_stack.count(w))
        {
          low[v] = std::min(low[v], index[w]);
        }
      }
      if (low[v] == index[v])
      {
        std::vector<std::string> component;
        std::string              w;
        do
        {
          w = stack.back();
          stack.pop_back();
          on_stack.erase(w);
          component.push_back(w);
        } while (w != v);
        bool self_loop = succ.at(v).count(v) > 0;
        if (component.size() > 1 || self_loop)
        {
          std::sort(component.begin(), component.end());
          std::string members;
          for (auto const &m : component)
          {
            members += (members.empty() ? "" : ", ") + m;
          }
          for (auto const &m : component)
          {
            error(m, "cycle", std::string(what) + " is part of a dependency cycle {" + members + "}");
          }
        }
      }
    };
    for (auto const &[v, _] : succ)
    {
      if (!index.count(v))
      {
        connect(v);
      }
    }
  }

  const VisualizationCatena   &catena_;
  const ComponentRegistry     &registry_;
  const ImplementationCatalog *catalog_;
  ValidationReport             report_;
};

}  // namespace

bool ValidationReport::ok() const
{
  return std::none_of(diagnostics.begin(), diagnostics.end(),
                      [](const Diagnostic &d) { return d.severity == Severity::error; });
}

bool ValidationReport::has_code(std::string_view code) const
{
  return std::any_of(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic &d) { return d.code == code; });
}

std::string ValidationReport::to_text() const
{
  std::ostringstream out;
  for (auto const &d : diagnostics)
  {
    out << (d.severity == Severity::error ? "error" : "warning") << ' ' << d.subject << " [" << d.code << "] "
        << d.message << '\n';
  }
  return out.str();
}

json ValidationReport::to_json() const
{
  json list = json::array();
  for (auto const &d : diagnostics)
  {
    list.push_back({{"severity", d.severity == Severity::error ? "error" : "warning"},
                    {"subject", d.subject},
                    {"code", d.code},
                    {"message", d.message}});
  }
  return json{{"ok", ok()}, {"diagnostics", std::move(list)}};
}

ValidationReport validate_catena(const VisualizationCatena &catena, const ComponentRegistry &registry,
                                 const ImplementationCatalog *catalog)
{
  return Checker(catena, registry, catalog).run();
}

}  // namespace watchtower::model
