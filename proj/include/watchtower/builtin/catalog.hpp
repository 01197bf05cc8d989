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

#include "watchtower/common/json.hpp"
#include "watchtower/model/components.hpp"

#include <utility>
#include <vector>

namespace watchtower::builtin {

/// Bodies of every built-in component, in registration order.
const std::vector<std::pair<model::ComponentKind, json>> &components();

/// Registry holding exactly the built-in components.
model::ComponentRegistry registry();

}  // namespace watchtower::builtin
