#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace uloc {

struct Arrow {
  std::size_t source = 0;
  std::size_t target = 0;
  bool operator==(const Arrow& o) const { return source == o.source && target == o.target; }
};

// A path is a sequence of arrow indices; the empty path at v is the idempotent e_v.
using Path = std::vector<std::size_t>;

// Finite acyclic quiver with vertices 0..n-1.
class QuiverShape {
 public:
  QuiverShape() = default;
  QuiverShape(std::size_t vertex_count, std::vector<Arrow> arrows);

  std::size_t vertex_count() const { return n_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  // paths(v, w): all paths from v to w, shortest first.
  const std::vector<Path>& paths(std::size_t v, std::size_t w) const { return paths_[v][w]; }
  std::size_t path_count(std::size_t v, std::size_t w) const { return paths_[v][w].size(); }
  // Position of a path inside paths(v, end vertex).
  std::size_t path_index(std::size_t v, const Path& p) const;
  std::size_t end_vertex(std::size_t v, const Path& p) const;

  std::string describe() const;
  bool operator==(const QuiverShape& o) const { return n_ == o.n_ && arrows_ == o.arrows_; }

 private:
  std::size_t n_ = 0;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::vector<Path>>> paths_;
};

}  // namespace uloc
