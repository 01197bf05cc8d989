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
#include "watchtower/engine/payload.hpp"
#include "watchtower/model/catena.hpp"
#include "watchtower/model/components.hpp"
#include "watchtower/techniques/registry.hpp"
#include "watchtower/techniques/types.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace testkit {

namespace fs = std::filesystem;
using watchtower::json;

fs::path    fixture(const std::string &relative);
std::string slurp(const fs::path &path);
void        spill(const fs::path &path, const std::string &text);

/// Fresh directory removed on destruction.
class TempDir
{
public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &)            = delete;
  TempDir &operator=(const TempDir &) = delete;

  const fs::path &path() const noexcept { return path_; }
  fs::path        operator/(const std::string &name) const { return path_ / name; }

private:
  fs::path path_;
};

/// Seeded generator; every property test prints its seed on failure via the
/// SCOPED_TRACE in the caller.
class Gen
{
public:
  explicit Gen(std::uint64_t seed)
    : rng_(seed)
  {}

  int    integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  bool   chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::string word(int length);

  template <typename T>
  const T &pick(const std::vector<T> &items)
  {
    return items[static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1))];
  }

  template <typename T>
  void shuffle(std::vector<T> &items)
  {
    std::shuffle(items.begin(), items.end(), rng_);
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

// Small synthetic component set for graph-level properties. Every entry has
// type `num` (one record {value}); `test.mix` folds all input values into one
// output, `test.split` produces two.
std::vector<std::pair<watchtower::model::ComponentKind, json>> mix_components();
watchtower::model::ComponentRegistry        mix_registry();
watchtower::techniques::TechniqueRegistry   mix_techniques();
json                                        num_body(double value);
double                                      num_value(const json &body);

struct CatenaShape
{
  int max_functions = 30;
  int max_sources   = 6;
  int max_views     = 3;
};

/// Valid acyclic catena over mix_registry(). Function ids are random so
/// lexicographic order differs from creation order.
watchtower::model::VisualizationCatena random_catena(Gen &gen, const CatenaShape &shape = {});

/// Same catena with one extra binding that closes a cycle.
watchtower::model::VisualizationCatena add_back_edge(watchtower::model::VisualizationCatena catena, Gen &gen);

/// Independent count: input bindings plus output ports.
std::size_t binding_count(const watchtower::model::VisualizationCatena &catena);

/// Random forest of `n` activities with valid dates.
watchtower::techniques::ActivityHierarchy random_hierarchy(Gen &gen, int n);
/// Records on random activities with hours on a 0.25 grid.
watchtower::techniques::EffortTable random_effort(Gen &gen, const watchtower::techniques::ActivityHierarchy &h,
                                                  int n);

/// Golden catena from the fixture directory, parsed against the built-ins.
watchtower::model::VisualizationCatena golden_catena();
/// Stores plan, baseline and effort payloads imported from the fixture CSVs.
void load_golden_inputs(watchtower::engine::PayloadStore &store, bool with_effort = true);
/// Fixed clock for reproducible payload timestamps.
watchtower::Timestamp fixed_now();

}  // namespace testkit
