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

#pragma once

#include "watchtower/model/catena.hpp"
#include "watchtower/model/validation.hpp"

#include <string>
#include <vector>

namespace watchtower::model {

struct BoundFunction
{
  FunctionInstance       instance;
  std::vector<DataEntry> derived;  // one fresh entry per output port
};

/// Instantiates `spec` inside `catena`. Output entries are allocated as
/// `<id>.<port>`. Throws BindError ("unknown port", "unbound port", "arity",
/// "unresolved reference", "type mismatch", "unknown parameter",
/// "missing parameter", "constraint violation", "duplicate id").
BoundFunction bind_function_instance(const VisualizationCatena &catena, const FunctionSpec &spec,
                                     std::string id, PortBindings bindings, ParamMap params,
                                     const ImplementationCatalog *catalog = nullptr);

/// Returns `catena` extended with the bound instance and its derived entries.
VisualizationCatena with_function(VisualizationCatena catena, BoundFunction bound);

}  // namespace watchtower::model
