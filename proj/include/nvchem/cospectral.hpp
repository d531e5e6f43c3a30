// cospectral.hpp — bipartite off-diagonal support detection and the diagonal
// sign conjugation that makes T + K and T - K share a spectrum.

#pragma once

#include "nvchem/linalg.hpp"

#include <utility>
#include <vector>

namespace nvchem {

struct SupportGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // i < j, |H_ij| > threshold
  double threshold = 0;
};

struct TwoColoring {
  bool bipartite = false;
  std::vector<int> colors;     // +1 / -1 per vertex (valid when bipartite)
  std::vector<int> odd_cycle;  // witness when not bipartite
};

struct CospectralityReport {
  bool bipartite = false;
  std::vector<int> coloring;
  Matrix partner;                 // L = Lambda H Lambda = T - K (when bipartite)
  double spectral_deviation = 0;  // max |sorted eig(H) - sorted eig(L)|
  double threshold = 0;
  std::vector<int> odd_cycle;
};

SupportGraph support_graph(const Matrix& h, double threshold);

// breadth-first 2-coloring; fails exactly on an odd cycle
TwoColoring two_color(const SupportGraph& graph);

// Split H into diagonal T and off-diagonal K; when the support of K is
// bipartite, conjugate by the +/-1 coloring and compare spectra.
// threshold_rel is relative to the largest off-diagonal magnitude.
CospectralityReport cospectral_partner(const Matrix& h, double threshold_rel = 1e-10);

}  // namespace nvchem
