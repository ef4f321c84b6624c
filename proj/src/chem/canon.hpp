// Copyright 2026 The AmineScreen Authors.
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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace amine::chem {

struct LabeledEdge {
  int a;
  int b;
  int label;
};

// Vertex- and edge-labelled graph to be put in canonical order.
struct LabeledGraph {
  std::vector<std::int64_t> vertex_labels;
  std::vector<LabeledEdge> edges;
};

// Returns a canonical rank (0..n-1, all distinct) for each vertex.
//
// Ranks come from iterative neighbourhood refinement; remaining ties are
// broken by individualizing each member of the first tied class in turn and
// keeping the ordering whose adjacency encoding is lexicographically
// smallest. Isomorphic graphs therefore receive identical encodings. The
// search is capped at `max_leaves` orderings; beyond that the first branch
// is taken.
std::vector<int> canonical_ranks(const LabeledGraph& graph,
                                 std::size_t max_leaves = 20000);

// Depth-first serialization shared by the SMILES writer and the fragment
// keys. Components are started at their lowest-ranked vertex, neighbours are
// visited in rank order and ring closures use digits (then %nn).
struct DfsTokens {
  std::function<std::string(int vertex)> vertex;
  // Symbol for the edge (possibly empty) when traversed from -> to.
  std::function<std::string(int edge, int from, int to)> edge;
};

std::string dfs_serialize(int vertex_count, std::span<const LabeledEdge> edges,
                          std::span<const int> ranks, const DfsTokens& tokens);

}  // namespace amine::chem
