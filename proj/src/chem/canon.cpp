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

#include "chem/canon.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <utility>

#include "common/error.hpp"

namespace amine::chem {
namespace {

using Adjacency = std::vector<std::vector<std::pair<int, int>>>;  // (nbr, label)

template <typename Key>
std::vector<int> dense_rank(const std::vector<Key>& keys) {
  const std::size_t n = keys.size();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return keys[static_cast<std::size_t>(a)] <
                                              keys[static_cast<std::size_t>(b)]; });
  std::vector<int> rank(n, 0);
  int r = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && keys[static_cast<std::size_t>(idx[i - 1])] <
                     keys[static_cast<std::size_t>(idx[i])]) {
      ++r;
    }
    rank[static_cast<std::size_t>(idx[i])] = r;
  }
  return rank;
}

int class_count(const std::vector<int>& ranks) {
  if (ranks.empty()) return 0;
  return *std::max_element(ranks.begin(), ranks.end()) + 1;
}

std::vector<int> refine(const Adjacency& adj, std::vector<int> ranks) {
  using Key = std::pair<int, std::vector<std::pair<int, int>>>;
  int classes = class_count(ranks);
  while (true) {
    std::vector<Key> keys(ranks.size());
    for (std::size_t v = 0; v < ranks.size(); ++v) {
      keys[v].first = ranks[v];
      for (const auto& [nbr, label] : adj[v]) {
        keys[v].second.emplace_back(ranks[static_cast<std::size_t>(nbr)], label);
      }
      std::sort(keys[v].second.begin(), keys[v].second.end());
    }
    std::vector<int> next = dense_rank(keys);
    const int next_classes = class_count(next);
    ranks = std::move(next);
    if (next_classes == classes) return ranks;
    classes = next_classes;
  }
}

class Canonicalizer {
 public:
  Canonicalizer(const LabeledGraph& g, std::size_t max_leaves)
      : graph_(g), max_leaves_(max_leaves) {
    adj_.assign(g.vertex_labels.size(), {});
    for (const LabeledEdge& e : g.edges) {
      adj_[static_cast<std::size_t>(e.a)].emplace_back(e.b, e.label);
      adj_[static_cast<std::size_t>(e.b)].emplace_back(e.a, e.label);
    }
  }

  std::vector<int> run() {
    search(dense_rank(graph_.vertex_labels));
    return best_ranks_;
  }

 private:
  void search(std::vector<int> ranks) {
    ranks = refine(adj_, std::move(ranks));
    const int n = static_cast<int>(ranks.size());
    if (class_count(ranks) == n) {
      ++leaves_;
      auto enc = encode(ranks);
      if (best_ranks_.empty() || enc < best_encoding_) {
        best_encoding_ = std::move(enc);
        best_ranks_ = ranks;
      }
      return;
    }
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int r : ranks) ++counts[static_cast<std::size_t>(r)];
    int tied = 0;
    while (counts[static_cast<std::size_t>(tied)] < 2) ++tied;
    bool first = true;
    for (int v = 0; v < n; ++v) {
      if (ranks[static_cast<std::size_t>(v)] != tied) continue;
      if (!first && leaves_ >= max_leaves_) break;
      first = false;
      std::vector<int> keys(ranks.size());
      for (int u = 0; u < n; ++u) {
        const int r = ranks[static_cast<std::size_t>(u)];
        keys[static_cast<std::size_t>(u)] = 2 * r + ((r == tied && u != v) ? 1 : 0);
      }
      search(dense_rank(keys));
    }
  }

  std::vector<std::int64_t> encode(const std::vector<int>& ranks) const {
    const std::size_t n = ranks.size();
    std::vector<std::int64_t> enc(n);
    for (std::size_t v = 0; v < n; ++v) {
      enc[static_cast<std::size_t>(ranks[v])] = graph_.vertex_labels[v];
    }
    std::vector<std::array<std::int64_t, 3>> edges;
    edges.reserve(graph_.edges.size());
    for (const LabeledEdge& e : graph_.edges) {
      std::int64_t a = ranks[static_cast<std::size_t>(e.a)];
      std::int64_t b = ranks[static_cast<std::size_t>(e.b)];
      if (a > b) std::swap(a, b);
      edges.push_back({a, b, e.label});
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) enc.insert(enc.end(), e.begin(), e.end());
    return enc;
  }

  const LabeledGraph& graph_;
  std::size_t max_leaves_;
  Adjacency adj_;
  std::size_t leaves_ = 0;
  std::vector<std::int64_t> best_encoding_;
  std::vector<int> best_ranks_;
};

std::string ring_digit(int d) {
  if (d < 10) return std::to_string(d);
  return "%" + std::to_string(d);
}

}  // namespace

std::vector<int> canonical_ranks(const LabeledGraph& graph,
                                 std::size_t max_leaves) {
  if (graph.vertex_labels.empty()) return {};
  return Canonicalizer(graph, max_leaves).run();
}

std::string dfs_serialize(int vertex_count, std::span<const LabeledEdge> edges,
                          std::span<const int> ranks, const DfsTokens& tokens) {
  const std::size_t n = static_cast<std::size_t>(vertex_count);
  if (ranks.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "rank vector size mismatch");
  }
  // (neighbour, edge index), sorted by neighbour rank.
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[static_cast<std::size_t>(edges[e].a)].emplace_back(edges[e].b,
                                                           static_cast<int>(e));
    adj[static_cast<std::size_t>(edges[e].b)].emplace_back(edges[e].a,
                                                           static_cast<int>(e));
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end(), [&](const auto& x, const auto& y) {
      return ranks[static_cast<std::size_t>(x.first)] <
             ranks[static_cast<std::size_t>(y.first)];
    });
  }

  std::vector<bool> visited(n, false);
  std::vector<bool> edge_used(edges.size(), false);
  std::vector<std::vector<std::pair<int, int>>> children(n);   // (child, edge)
  std::vector<std::vector<std::pair<int, int>>> ring_open(n);  // (edge, partner)
  std::vector<std::vector<int>> ring_close(n);                 // edge

  auto build = [&](auto&& self, int v) -> void {
    visited[static_cast<std::size_t>(v)] = true;
    for (const auto& [u, e] : adj[static_cast<std::size_t>(v)]) {
      if (edge_used[static_cast<std::size_t>(e)]) continue;
      edge_used[static_cast<std::size_t>(e)] = true;
      if (!visited[static_cast<std::size_t>(u)]) {
        children[static_cast<std::size_t>(v)].emplace_back(u, e);
        self(self, u);
      } else {
        ring_open[static_cast<std::size_t>(u)].emplace_back(e, v);
        ring_close[static_cast<std::size_t>(v)].push_back(e);
      }
    }
  };

  std::vector<int> digit_of(edges.size(), 0);
  std::vector<bool> digit_busy(100, false);
  std::string out;

  auto emit = [&](auto&& self, int v) -> void {
    out += tokens.vertex(v);
    for (int e : ring_close[static_cast<std::size_t>(v)]) {
      const int d = digit_of[static_cast<std::size_t>(e)];
      out += ring_digit(d);
      digit_busy[static_cast<std::size_t>(d)] = false;
    }
    for (const auto& [e, partner] : ring_open[static_cast<std::size_t>(v)]) {
      int d = 1;
      while (d < 100 && digit_busy[static_cast<std::size_t>(d)]) ++d;
      if (d >= 100) throw Error(ErrorCode::kInternal, "too many open rings");
      digit_busy[static_cast<std::size_t>(d)] = true;
      digit_of[static_cast<std::size_t>(e)] = d;
      out += tokens.edge(e, v, partner);
      out += ring_digit(d);
    }
    const auto& kids = children[static_cast<std::size_t>(v)];
    for (std::size_t i = 0; i < kids.size(); ++i) {
      const bool last = i + 1 == kids.size();
      if (!last) out.push_back('(');
      out += tokens.edge(kids[i].second, v, kids[i].first);
      self(self, kids[i].first);
      if (!last) out.push_back(')');
    }
  };

  std::vector<int> by_rank(n);
  for (std::size_t v = 0; v < n; ++v) {
    by_rank[static_cast<std::size_t>(ranks[v])] = static_cast<int>(v);
  }
  bool first_component = true;
  for (int v : by_rank) {
    if (visited[static_cast<std::size_t>(v)]) continue;
    build(build, v);
    if (!first_component) out.push_back('.');
    first_component = false;
    emit(emit, v);
  }
  return out;
}

}  // namespace amine::chem
