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

#include "watchtower/model/binding.hpp"

#include "watchtower/common/error.hpp"

#include <algorithm>

namespace watchtower::model {

BoundFunction bind_function_instance(const VisualizationCatena &catena, const FunctionSpec &spec, std::string id,
                                     PortBindings bindings, ParamMap params, const ImplementationCatalog *catalog)
{
  if (!is_valid_id(id))
  {
    throw BindError("invalid id", "function instance id '" + id + "' must match [A-Za-z0-9._-]+");
  }
  if (catena.function(id))
  {
    throw BindError("duplicate id", "function instance '" + id + "' already exists");
  }
  for (auto const &[port, ids] : bindings)
  {
    if (!spec.input(port))
    {
      throw BindError("unknown port", "'" + spec.id + "' has no input port '" + port + "'");
    }
  }
  for (auto const &port : spec.inputs)
  {
    auto it = bindings.find(port.name);
    if (it == bindings.end() || it->second.empty())
    {
      throw BindError("unbound port", "input port '" + port.name + "' of '" + spec.id + "' is not bound");
    }
    if (port.arity == Arity::one && it->second.size() != 1)
    {
      throw BindError("arity", "input port '" + port.name + "' accepts exactly one entry");
    }
    if (port.arity == Arity::many)
    {
      std::sort(it->second.begin(), it->second.end());
    }
    for (auto const &entry_id : it->second)
    {
      auto const *entry = catena.entry(entry_id);
      if (!entry)
      {
        throw BindError("unresolved reference", "entry '" + entry_id + "' does not exist");
      }
      if (entry->data_type != port.data_type)
      {
        throw BindError("type mismatch", "port '" + port.name + "' requires '" + port.data_type + "' but '" +
                                             entry_id + "' is '" + entry->data_type + "'");
      }
    }
  }
  for (auto const &[name, value] : params)
  {
    auto const *param = spec.param(name);
    if (!param)
    {
      throw BindError("unknown parameter", "'" + spec.id + "' declares no parameter '" + name + "'");
    }
    if (auto problem = check_param_value(*param, value))
    {
      throw BindError("constraint violation", *problem);
    }
  }
  for (auto const &param : spec.params)
  {
    if (param.required() && !params.count(param.name))
    {
      throw BindError("missing parameter", "parameter '" + param.name + "' must be supplied");
    }
  }
  if (catalog)
  {
    if (auto problem = catalog->check_params(spec.implementation, effective_params(spec.params, params)))
    {
      throw BindError("constraint violation", *problem);
    }
  }

  BoundFunction bound;
  bound.instance.id     = id;
  bound.instance.spec   = spec.id;
  bound.instance.inputs = std::move(bindings);
  bound.instance.params = std::move(params);
  for (auto const &port : spec.outputs)
  {
    auto entry_id = id + "." + port.name;
    if (catena.entry(entry_id))
    {
      throw BindError("duplicate id", "entry '" + entry_id + "' already exists");
    }
    bound.instance.outputs[port.name] = entry_id;
    bound.derived.push_back({entry_id, port.data_type, DerivedSource{id, port.name}});
  }
  return bound;
}

VisualizationCatena with_function(VisualizationCatena catena, BoundFunction bound)
{
  catena.functions.push_back(std::move(bound.instance));
  for (auto &entry : bound.derived)
  {
    catena.entries.push_back(std::move(entry));
  }
  return catena;
}

}  // namespace watchtower::model
