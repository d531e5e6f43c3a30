#include "nvchem/cospectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace nvchem {

SupportGraph support_graph(const Matrix& h, double threshold) {
  if (!(threshold > 0)) throw std::invalid_argument("support_graph: threshold must be positive");
  const double dev = hermitian_deviation(h);
  if (!(dev < kHermitianTol))
    throw std::invalid_argument("support_graph: input is not Hermitian");

  SupportGraph graph;
  graph.vertices = static_cast<int>(h.rows());
  graph.threshold = threshold;
  for (int i = 0; i < graph.vertices; ++i)
    for (int j = i + 1; j < graph.vertices; ++j)
      if (std::abs(h(i, j)) > threshold) graph.edges.emplace_back(i, j);
  return graph;
}

TwoColoring two_color(const SupportGraph& graph) {
  const int n = graph.vertices;
  std::vector<std::vector<int>> adjacency(static_cast<size_t>(n));
  for (const auto& [i, j] : graph.edges) {
    adjacency[static_cast<size_t>(i)].push_back(j);
    adjacency[static_cast<size_t>(j)].push_back(i);
  }

  TwoColoring out;
  out.colors.assign(static_cast<size_t>(n), 0);
  std::vector<int> parent(static_cast<size_t>(n), -1);

  for (int start = 0; start < n; ++start) {
    if (out.colors[static_cast<size_t>(start)] != 0) continue;
    out.colors[static_cast<size_t>(start)] = +1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[static_cast<size_t>(u)]) {
        if (out.colors[static_cast<size_t>(v)] == 0) {
          out.colors[static_cast<size_t>(v)] = -out.colors[static_cast<size_t>(u)];
          parent[static_cast<size_t>(v)] = u;
          queue.push_back(v);
        } else if (out.colors[static_cast<size_t>(v)] == out.colors[static_cast<size_t>(u)]) {
          // odd cycle: join the two root paths at their first common vertex
          std::vector<int> path_u, path_v;
          for (int w = u; w != -1; w = parent[static_cast<size_t>(w)]) path_u.push_back(w);
          for (int w = v; w != -1; w = parent[static_cast<size_t>(w)]) path_v.push_back(w);
          int cu = static_cast<int>(path_u.size()) - 1;
          int cv = static_cast<int>(path_v.size()) - 1;
          while (cu > 0 && cv > 0 && path_u[static_cast<size_t>(cu - 1)] ==
                                         path_v[static_cast<size_t>(cv - 1)]) {
            --cu;
            --cv;
          }
          out.odd_cycle.assign(path_u.begin(), path_u.begin() + cu + 1);
          for (int w = cv - 1; w >= 0; --w) out.odd_cycle.push_back(path_v[static_cast<size_t>(w)]);
          out.bipartite = false;
          return out;
        }
      }
    }
  }
  out.bipartite = true;
  return out;
}

CospectralityReport cospectral_partner(const Matrix& h, double threshold_rel) {
  const double dev = hermitian_deviation(h);
  if (!(dev < kHermitianTol))
    throw std::invalid_argument("cospectral_partner: input is not Hermitian");

  double max_off = 0.0;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      if (i != j) max_off = std::max(max_off, std::abs(h(i, j)));

  CospectralityReport report;
  report.threshold = std::max(threshold_rel * max_off, 1e-300);

  const SupportGraph graph = support_graph(h, report.threshold);
  const TwoColoring coloring = two_color(graph);
  if (!coloring.bipartite) {
    report.bipartite = false;
    report.odd_cycle = coloring.odd_cycle;
    return report;
  }

  report.bipartite = true;
  report.coloring = coloring.colors;
  report.partner = h;
  for (int i = 0; i < h.rows(); ++i)
    for (int j = 0; j < h.cols(); ++j)
      report.partner(i, j) *= static_cast<double>(coloring.colors[static_cast<size_t>(i)] *
                                                  coloring.colors[static_cast<size_t>(j)]);

  const EigenDecomposition eh = hermitian_eig(h);
  const EigenDecomposition el = hermitian_eig(report.partner);
  report.spectral_deviation = (eh.values - el.values).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace nvchem
