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

#include "watchtower/engine/graph.hpp"

#include "watchtower/common/error.hpp"

#include <deque>
#include <functional>
#include <map>
#include <queue>

namespace watchtower::engine {

std::set<std::string> DependencyGraph::consumers(const std::string &entry) const
{
  std::set<std::string> out;
  for (auto it = edges.lower_bound(Edge{{NodeKind::entry, entry}, {}, {}});
       it != edges.end() && it->from.kind == NodeKind::entry && it->from.id == entry; ++it)
  {
    out.insert(it->to.id);
  }
  return out;
}

std::set<std::string> DependencyGraph::outputs(const std::string &function) const
{
  std::set<std::string> out;
  for (auto it = edges.lower_bound(Edge{{NodeKind::function, function}, {}, {}});
       it != edges.end() && it->from.kind == NodeKind::function && it->from.id == function; ++it)
  {
    out.insert(it->to.id);
  }
  return out;
}

DependencyGraph build_dependency_graph(const model::VisualizationCatena &catena)
{
  DependencyGraph graph;
  for (auto const &entry : catena.entries)
  {
    graph.nodes.insert({NodeKind::entry, entry.id});
  }
  for (auto const &fn : catena.functions)
  {
    NodeId node{NodeKind::function, fn.id};
    graph.nodes.insert(node);
    for (auto const &[port, ids] : fn.inputs)
    {
      for (auto const &id : ids)
      {
        graph.nodes.insert({NodeKind::entry, id});
        graph.edges.insert({{NodeKind::entry, id}, node, port});
      }
    }
    for (auto const &[port, id] : fn.outputs)
    {
      graph.nodes.insert({NodeKind::entry, id});
      graph.edges.insert({node, {NodeKind::entry, id}, port});
    }
  }
  return graph;
}

std::vector<std::string> execution_order(const DependencyGraph &graph)
{
  // Collapse entries: f -> g whenever g consumes an entry f produces.
  std::map<std::string, std::set<std::string>> next;
  std::map<std::string, std::size_t>           indegree;
  for (auto const &node : graph.nodes)
  {
    if (node.kind == NodeKind::function)
    {
      next[node.id];
      indegree[node.id];
    }
  }
  for (auto const &[fn, _] : next)
  {
    for (auto const &entry : graph.outputs(fn))
    {
      for (auto const &consumer : graph.consumers(entry))
      {
        if (next[fn].insert(consumer).second)
        {
          ++indegree[consumer];
        }
      }
    }
  }

  std::priority_queue<std::string, std::vector<std::string>, std::greater<>> ready;
  for (auto const &[fn, deg] : indegree)
  {
    if (deg == 0)
    {
      ready.push(fn);
    }
  }
  std::vector<std::string> order;
  while (!ready.empty())
  {
    auto fn = ready.top();
    ready.pop();
    order.push_back(fn);
    for (auto const &succ : next[fn])
    {
      if (--indegree[succ] == 0)
      {
        ready.push(succ);
      }
    }
  }
  if (order.size() != indegree.size())
  {
    std::string rest;
    for (auto const &[fn, deg] : indegree)
    {
      if (deg > 0)
      {
        rest += (rest.empty() ? "" : ", ") + fn;
      }
    }
    throw Error("dependency cycle among function instances: " + rest);
  }
  return order;
}

std::set<std::string> reachable_functions(const DependencyGraph &graph, const std::set<std::string> &changed)
{
  std::set<std::string>   seen_entries(changed.begin(), changed.end());
  std::deque<std::string> pending(changed.begin(), changed.end());
  std::set<std::string>   functions;
  while (!pending.empty())
  {
    auto entry = pending.front();
    pending.pop_front();
    for (auto const &fn : graph.consumers(entry))
    {
      if (!functions.insert(fn).second)
      {
        continue;
      }
      for (auto const &out : graph.outputs(fn))
      {
        if (seen_entries.insert(out).second)
        {
          pending.push_back(out);
        }
      }
    }
  }
  return functions;
}

}  // namespace watchtower::engine
