#include "uloc/quiver.hpp"

#include <algorithm>

#include "uloc/error.hpp"

namespace uloc {

QuiverShape::QuiverShape(std::size_t vertex_count, std::vector<Arrow> arrows)
    : n_(vertex_count), arrows_(std::move(arrows)) {
  if (n_ == 0) throw ParseError("a quiver needs at least one vertex");
  for (const auto& a : arrows_)
    if (a.source >= n_ || a.target >= n_)
      throw ParseError("arrow endpoint out of range in quiver with " + std::to_string(n_) +
                       " vertices");

  // Kahn's algorithm; leftover vertices sit on a directed cycle.
  std::vector<std::size_t> indeg(n_, 0);
  for (const auto& a : arrows_) ++indeg[a.target];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < n_; ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (const auto& a : arrows_)
      if (a.source == v && --indeg[a.target] == 0) ready.push_back(a.target);
  }
  if (seen != n_) throw CyclicQuiver("the quiver has a directed cycle");

  paths_.assign(n_, std::vector<std::vector<Path>>(n_));
  for (std::size_t v = 0; v < n_; ++v) {
    std::vector<Path> frontier{Path{}};
    paths_[v][v].push_back(Path{});
    while (!frontier.empty()) {
      std::vector<Path> next;
      for (const Path& p : frontier) {
        std::size_t end = p.empty() ? v : arrows_[p.back()].target;
        for (std::size_t ai = 0; ai < arrows_.size(); ++ai) {
          if (arrows_[ai].source != end) continue;
          Path q = p;
          q.push_back(ai);
          paths_[v][arrows_[ai].target].push_back(q);
          next.push_back(std::move(q));
        }
      }
      frontier = std::move(next);
    }
  }
}

std::size_t QuiverShape::end_vertex(std::size_t v, const Path& p) const {
  return p.empty() ? v : arrows_[p.back()].target;
}

std::size_t QuiverShape::path_index(std::size_t v, const Path& p) const {
  const auto& list = paths_[v][end_vertex(v, p)];
  auto it = std::find(list.begin(), list.end(), p);
  if (it == list.end()) throw std::logic_error("path not found");
  return static_cast<std::size_t>(it - list.begin());
}

std::string QuiverShape::describe() const {
  std::string s = std::to_string(n_) + " vertices, arrows";
  if (arrows_.empty()) s += " none";
  for (const auto& a : arrows_)
    s += " " + std::to_string(a.source + 1) + "->" + std::to_string(a.target + 1);
  return s;
}

}  // namespace uloc
