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

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace watchtower::engine {

enum class NodeKind
{
  entry,
  function,
};

struct NodeId
{
  NodeKind    kind = NodeKind::entry;
  std::string id;

  auto operator<=>(const NodeId &) const = default;
};

/// One edge per binding: entry -> function for an input binding (labelled with
/// the port), function -> entry for an output port.
struct Edge
{
  NodeId      from;
  NodeId      to;
  std::string port;

  auto operator<=>(const Edge &) const = default;
};

struct DependencyGraph
{
  std::set<NodeId> nodes;
  std::set<Edge>   edges;

  std::set<std::string> consumers(const std::string &entry) const;
  std::set<std::string> outputs(const std::string &function) const;
};

/// Nodes are every data entry and every function instance of the catena.
DependencyGraph build_dependency_graph(const model::VisualizationCatena &catena);

/// Topological order of function instances, ties broken by id. Throws Error
/// naming the remaining instances when the graph is cyclic.
std::vector<std::string> execution_order(const DependencyGraph &graph);

/// Function instances reachable from any of `changed` along graph edges.
std::set<std::string> reachable_functions(const DependencyGraph &graph, const std::set<std::string> &changed);

}  // namespace watchtower::engine
