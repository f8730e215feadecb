// Copyright 2026 The warmrec Authors.
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

#include "warmrec/hits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace warmrec {

namespace {

using BoolMatrix = std::vector<std::uint8_t>;  // row-major n x n

// Scales to unit sum; a zero vector becomes uniform.
void normalize_l1(std::vector<double>& x) {
  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  if (sum <= 0.0) {
    std::fill(x.begin(), x.end(), 1.0 / static_cast<double>(x.size()));
    return;
  }
  for (auto& e : x) e /= sum;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

// y = A x
std::vector<double> multiply(const CandidateGraph& g, const std::vector<double>& x) {
  const std::size_t n = g.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (g.edge(i, j)) acc += x[j];
    }
    y[i] = acc;
  }
  return y;
}

// y = A^t x
std::vector<double> multiply_transposed(const CandidateGraph& g, const std::vector<double>& x) {
  const std::size_t n = g.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (g.edge(i, j)) y[j] += x[i];
    }
  }
  return y;
}

BoolMatrix bool_product(const BoolMatrix& a, const BoolMatrix& b, std::size_t n) {
  BoolMatrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!a[i * n + k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (b[k * n + j]) out[i * n + j] = 1;
      }
    }
  }
  return out;
}

// A symmetric nonnegative M with a positive diagonal is primitive iff it is
// irreducible iff M^(n-1) > 0. Its power patterns only grow, so squaring
// until the exponent reaches n - 1 decides it.
bool symmetric_primitive(const BoolMatrix& m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!m[i * n + i]) return false;
  }
  BoolMatrix p = m;
  std::size_t exponent = 1;
  auto all_positive = [&](const BoolMatrix& x) {
    return std::all_of(x.begin(), x.end(), [](std::uint8_t e) { return e != 0; });
  };
  while (!all_positive(p)) {
    if (exponent >= n) return false;
    p = bool_product(p, p, n);
    exponent *= 2;
  }
  return true;
}

}  // namespace

CandidateGraph::CandidateGraph(std::vector<Page> nodes) : nodes_(std::move(nodes)) {
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  adj_.assign(nodes_.size() * nodes_.size(), 0);
}

void CandidateGraph::add_edge(std::size_t from, std::size_t to) {
  if (from == to) return;
  auto& cell = adj_.at(from * nodes_.size() + to);
  if (!cell) {
    cell = 1;
    ++edges_;
  }
}

std::optional<std::size_t> CandidateGraph::index_of(const Page& page) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), page);
  if (it == nodes_.end() || *it != page) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

const char* to_string(Primitivity p) {
  switch (p) {
    case Primitivity::kPrimitive:
      return "true";
    case Primitivity::kNotPrimitive:
      return "false";
    case Primitivity::kUnchecked:
      return "unchecked";
  }
  return "unchecked";
}

double HitsScores::hub_of(const Page& page) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), page);
  return (it == nodes.end() || *it != page) ? 0.0 : hub[it - nodes.begin()];
}

double HitsScores::authority_of(const Page& page) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), page);
  return (it == nodes.end() || *it != page) ? 0.0 : authority[it - nodes.begin()];
}

CandidateGraph build_candidate_graph(const PageSet& candidate_pages, const SiteMap& site) {
  CandidateGraph g(std::vector<Page>(candidate_pages.begin(), candidate_pages.end()));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto& to : site.links_from(g.nodes()[i])) {
      if (auto j = g.index_of(to)) g.add_edge(i, *j);
    }
  }
  return g;
}

double rayleigh_quotient_ata(const CandidateGraph& graph, std::span<const double> x) {
  std::vector<double> xv(x.begin(), x.end());
  double xx = std::inner_product(xv.begin(), xv.end(), xv.begin(), 0.0);
  if (xx <= 0.0) return 0.0;
  auto ax = multiply(graph, xv);
  double axax = std::inner_product(ax.begin(), ax.end(), ax.begin(), 0.0);
  return axax / xx;
}

Primitivity is_primitive_product(const CandidateGraph& graph, std::size_t limit) {
  const std::size_t n = graph.size();
  if (n > limit) return Primitivity::kUnchecked;
  if (n == 0 || graph.edge_count() == 0) return Primitivity::kNotPrimitive;
  BoolMatrix ata(n * n, 0), aat(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        // (A^t A)_ij = sum_k A_ki A_kj ; (A A^t)_ij = sum_k A_ik A_jk
        if (graph.edge(k, i) && graph.edge(k, j)) ata[i * n + j] = 1;
        if (graph.edge(i, k) && graph.edge(j, k)) aat[i * n + j] = 1;
      }
    }
  }
  return symmetric_primitive(ata, n) && symmetric_primitive(aat, n) ? Primitivity::kPrimitive
                                                                    : Primitivity::kNotPrimitive;
}

HitsScores hits_iterate(const CandidateGraph& graph, const HitsOptions& options) {
  const std::size_t n = graph.size();
  if (n == 0) throw ConfigError("HITS needs at least one node");
  if (!(options.tolerance > 0.0)) throw ConfigError("HITS tolerance must be positive");
  if (options.max_iterations == 0) throw ConfigError("HITS max_iterations must be positive");

  HitsScores out;
  out.nodes = graph.nodes();
  out.primitive = is_primitive_product(graph, options.primitivity_check_limit);

  if (graph.edge_count() == 0) {
    out.hub.assign(n, 1.0 / static_cast<double>(n));
    out.authority = out.hub;
    out.converged = true;
    return out;
  }

  std::vector<double> u(n, 1.0);
  if (!options.initial_hub.empty()) {
    if (options.initial_hub.size() != n) throw ConfigError("initial hub vector has wrong size");
    for (double e : options.initial_hub) {
      if (!(e >= 0.0)) throw ConfigError("initial hub vector must be nonnegative");
    }
    u = options.initial_hub;
  }
  normalize_l1(u);

  std::vector<double> v;
  double dv = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    auto v_next = multiply_transposed(graph, u);
    normalize_l1(v_next);
    auto u_next = multiply(graph, v_next);
    normalize_l1(u_next);

    dv = v.empty() ? std::numeric_limits<double>::infinity() : l1_distance(v_next, v);
    double du = l1_distance(u_next, u);
    v = std::move(v_next);
    u = std::move(u_next);
    out.iterations_used = it;
    if (du < options.tolerance && dv < options.tolerance) {
      out.converged = true;
      break;
    }
  }

  out.hub = std::move(u);
  out.authority = std::move(v);
  out.dominant_eigenvalue_estimate = rayleigh_quotient_ata(graph, out.authority);
  return out;
}

}  // namespace warmrec
