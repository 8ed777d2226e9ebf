#include "monoclone/hasse.hpp"

namespace monoclone {

std::vector<Edge> covering_edges(const std::vector<std::vector<bool>>& leq) {
  const auto n = leq.size();
  std::vector<Edge> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq[i][j]) continue;
      bool cover = true;
      for (std::size_t k = 0; k < n && cover; ++k) {
        if (k != i && k != j && leq[i][k] && leq[k][j]) cover = false;
      }
      if (cover) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace monoclone
