#include "adapart/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adapart/errors.hpp"

namespace adapart {

double DyadicInterval::lower() const { return std::ldexp(double(lo), -int(level)); }
double DyadicInterval::upper() const { return std::ldexp(double(hi), -int(level)); }
double DyadicInterval::length() const { return std::ldexp(double(hi - lo), -int(level)); }

double interval_overlap(const DyadicInterval& a, const DyadicInterval& b) {
  const std::uint32_t level = std::max(a.level, b.level);
  const std::uint64_t alo = a.lo << (level - a.level);
  const std::uint64_t ahi = a.hi << (level - a.level);
  const std::uint64_t blo = b.lo << (level - b.level);
  const std::uint64_t bhi = b.hi << (level - b.level);
  const std::uint64_t lo = std::max(alo, blo);
  const std::uint64_t hi = std::min(ahi, bhi);
  if (hi <= lo) return 0.0;
  return std::ldexp(double(hi - lo), -int(level));
}

double DyadicRegion::volume() const {
  double v = 1.0;
  for (const auto& s : sides_) v *= s.length();
  return v;
}

bool DyadicRegion::contains(std::span<const double> y) const {
  if (y.size() != sides_.size()) throw std::invalid_argument("point dimension mismatch");
  for (std::size_t d = 0; d < sides_.size(); ++d) {
    if (y[d] < sides_[d].lower() || y[d] >= sides_[d].upper()) return false;
  }
  return true;
}

std::string DyadicRegion::to_string() const {
  std::ostringstream out;
  for (std::size_t d = 0; d < sides_.size(); ++d) {
    if (d) out << ',';
    const auto& s = sides_[d];
    out << s.level << ':' << s.lo;
    if (!s.unit_width()) out << '-' << s.hi;
  }
  return out.str();
}

DyadicRegion DyadicRegion::parse(const std::string& text) {
  std::vector<DyadicInterval> sides;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw ConfigError("bad leaf string: " + text);
    DyadicInterval side;
    side.level = std::uint32_t(std::stoul(token.substr(0, colon)));
    const std::string rest = token.substr(colon + 1);
    const auto dash = rest.find('-');
    if (dash == std::string::npos) {
      side.lo = std::stoull(rest);
      side.hi = side.lo + 1;
    } else {
      side.lo = std::stoull(rest.substr(0, dash));
      side.hi = std::stoull(rest.substr(dash + 1));
    }
    if (side.level > kMaxDepth || side.hi <= side.lo || side.hi > (std::uint64_t(1) << side.level))
      throw ConfigError("bad leaf string: " + text);
    sides.push_back(side);
  }
  if (sides.empty()) throw ConfigError("empty leaf string");
  return DyadicRegion(std::move(sides));
}

namespace {

DyadicInterval low_part(const DyadicInterval& s, std::uint32_t level, std::uint64_t cut) {
  DyadicInterval out{level, s.lo << (level - s.level), cut};
  out.reduce();
  return out;
}

DyadicInterval high_part(const DyadicInterval& s, std::uint32_t level, std::uint64_t cut) {
  DyadicInterval out{level, cut, s.hi << (level - s.level)};
  out.reduce();
  return out;
}

}  // namespace

std::pair<DyadicRegion, DyadicRegion> split_region(const DyadicRegion& region, int dim) {
  if (dim < 0 || dim >= region.dim_count()) throw std::invalid_argument("cut dimension out of range");
  const DyadicInterval& s = region.side(dim);
  std::uint32_t level = s.level;
  std::uint64_t lo = s.lo, hi = s.hi;
  if (((hi - lo) & 1) != 0) {  // odd width: refine once so the midpoint is a grid point
    ++level;
    lo <<= 1;
    hi <<= 1;
  }
  if (level > kMaxDepth) throw std::overflow_error("split exceeds maximum dyadic depth");
  const std::uint64_t mid = lo + (hi - lo) / 2;
  DyadicRegion a = region, b = region;
  a.side(dim) = DyadicInterval{level, lo, mid};
  a.side(dim).reduce();
  b.side(dim) = DyadicInterval{level, mid, hi};
  b.side(dim).reduce();
  return {std::move(a), std::move(b)};
}

std::pair<DyadicRegion, DyadicRegion> split_region_at(const DyadicRegion& region, int dim,
                                                      std::uint32_t grid_depth, std::uint64_t k) {
  if (dim < 0 || dim >= region.dim_count()) throw std::invalid_argument("cut dimension out of range");
  if (grid_depth > kMaxDepth) throw std::overflow_error("grid depth exceeds maximum dyadic depth");
  const DyadicInterval& s = region.side(dim);
  const std::uint32_t level = std::max(s.level, grid_depth);
  const std::uint64_t lo = s.lo << (level - s.level);
  const std::uint64_t hi = s.hi << (level - s.level);
  const std::uint64_t cut = k << (level - grid_depth);
  if (cut <= lo || cut >= hi) throw std::invalid_argument("grid cut point not interior to region side");
  return {DyadicRegion([&] {
            DyadicRegion r = region;
            r.side(dim) = low_part(s, level, cut);
            return r.sides();
          }()),
          DyadicRegion([&] {
            DyadicRegion r = region;
            r.side(dim) = high_part(s, level, cut);
            return r.sides();
          }())};
}

double region_overlap(const DyadicRegion& a, const DyadicRegion& b) {
  if (a.dim_count() != b.dim_count()) throw std::invalid_argument("region dimension mismatch");
  double v = 1.0;
  for (int d = 0; d < a.dim_count(); ++d) {
    const double len = interval_overlap(a.side(d), b.side(d));
    if (len == 0.0) return 0.0;
    v *= len;
  }
  return v;
}

BinaryPartition BinaryPartition::unit(int p) {
  if (p < 1) throw std::invalid_argument("dimension count must be positive");
  BinaryPartition out;
  out.p_ = p;
  out.leaves_.push_back(DyadicRegion(p));
  Node root;
  root.leaf = 0;
  out.nodes_.push_back(root);
  out.leaf_node_.push_back(0);
  return out;
}

int BinaryPartition::locate(std::span<const double> y) const {
  if (int(y.size()) != p_) throw std::invalid_argument("point dimension mismatch");
  for (int d = 0; d < p_; ++d) {
    if (!(y[d] >= 0.0 && y[d] <= 1.0)) throw std::invalid_argument("point outside the unit cube");
  }
  int node = 0;
  while (nodes_[std::size_t(node)].leaf < 0) {
    const Node& n = nodes_[std::size_t(node)];
    node = y[std::size_t(n.dim)] < n.point ? n.low : n.high;
  }
  return nodes_[std::size_t(node)].leaf;
}

std::pair<int, int> BinaryPartition::split_leaf(int leaf, int dim) {
  const DyadicRegion& region = leaves_.at(std::size_t(leaf));
  auto [a, b] = split_region(region, dim);
  const double point = b.side(dim).lower();

  cuts_.push_back(CutRecord{dim, point, region});
  const int node = leaf_node_[std::size_t(leaf)];
  const int low_node = int(nodes_.size());
  const int high_node = low_node + 1;
  const int high_leaf = int(leaves_.size());

  nodes_.push_back(Node{-1, 0.0, -1, -1, leaf});
  nodes_.push_back(Node{-1, 0.0, -1, -1, high_leaf});
  nodes_[std::size_t(node)] = Node{dim, point, low_node, high_node, -1};

  leaves_[std::size_t(leaf)] = std::move(a);
  leaves_.push_back(std::move(b));
  leaf_node_[std::size_t(leaf)] = low_node;
  leaf_node_.push_back(high_node);
  return {leaf, high_leaf};
}

std::pair<int, int> BinaryPartition::split_leaf_at(int leaf, int dim, std::uint32_t grid_depth,
                                                   std::uint64_t k) {
  const DyadicRegion& region = leaves_.at(std::size_t(leaf));
  auto [a, b] = split_region_at(region, dim, grid_depth, k);
  const double point = b.side(dim).lower();

  cuts_.push_back(CutRecord{dim, point, region});
  const int node = leaf_node_[std::size_t(leaf)];
  const int low_node = int(nodes_.size());
  const int high_node = low_node + 1;
  const int high_leaf = int(leaves_.size());

  nodes_.push_back(Node{-1, 0.0, -1, -1, leaf});
  nodes_.push_back(Node{-1, 0.0, -1, -1, high_leaf});
  nodes_[std::size_t(node)] = Node{dim, point, low_node, high_node, -1};

  leaves_[std::size_t(leaf)] = std::move(a);
  leaves_.push_back(std::move(b));
  leaf_node_[std::size_t(leaf)] = low_node;
  leaf_node_.push_back(high_node);
  return {leaf, high_leaf};
}

std::vector<int> BinaryPartition::canonical_order() const {
  std::vector<int> order(leaves_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return leaves_[std::size_t(a)] < leaves_[std::size_t(b)];
  });
  return order;
}

std::vector<std::string> BinaryPartition::canonical_leaf_strings() const {
  std::vector<std::string> out;
  out.reserve(leaves_.size());
  for (int i : canonical_order()) out.push_back(leaves_[std::size_t(i)].to_string());
  return out;
}

std::string BinaryPartition::canonical_text() const {
  std::string out;
  for (const auto& line : canonical_leaf_strings()) {
    out += line;
    out += '\n';
  }
  return out;
}

std::vector<DyadicRegion> BinaryPartition::sorted_leaves() const {
  std::vector<DyadicRegion> out = leaves_;
  std::sort(out.begin(), out.end());
  return out;
}

bool volumes_sum_to_one(const BinaryPartition& partition) {
  // Count the summands 2^-e contributed by every leaf, then telescope from
  // the deepest exponent up; an odd count anywhere below e=0 means the total
  // cannot equal 2^0.
  std::map<std::uint64_t, std::uint64_t, std::greater<>> counts;
  for (const auto& leaf : partition.leaves()) {
    std::uint64_t total_level = 0;
    unsigned __int128 width = 1;
    for (const auto& s : leaf.sides()) {
      total_level += s.level;
      width *= (s.hi - s.lo);
    }
    for (int bit = 0; bit < 128; ++bit) {
      if ((width >> bit) & 1) {
        if (std::uint64_t(bit) > total_level) return false;  // volume > 1: impossible here
        ++counts[total_level - std::uint64_t(bit)];
      }
    }
  }
  while (!counts.empty()) {
    auto it = counts.begin();
    const std::uint64_t e = it->first;
    const std::uint64_t c = it->second;
    counts.erase(it);
    if (e == 0) return c == 1 && counts.empty();
    if (c & 1) return false;
    counts[e - 1] += c / 2;
  }
  return false;
}

bool leaves_pairwise_disjoint(const BinaryPartition& partition) {
  const auto& leaves = partition.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    for (std::size_t j = i + 1; j < leaves.size(); ++j) {
      if (region_overlap(leaves[i], leaves[j]) != 0.0) return false;
    }
  }
  return true;
}

std::uint64_t partition_count_bound(int p, int size) {
  std::uint64_t bound = 1;
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  for (int i = 0; i < size; ++i) {  // p^I
    if (bound > cap / std::uint64_t(p)) return cap;
    bound *= std::uint64_t(p);
  }
  for (int i = 2; i <= size; ++i) {  // * I!
    if (bound > cap / std::uint64_t(i)) return cap;
    bound *= std::uint64_t(i);
  }
  return bound;
}

std::vector<BinaryPartition> enumerate_partitions(int p, int size,
                                                  const EnumerationOptions& options) {
  if (p < 1 || size < 1) throw std::invalid_argument("need p >= 1 and size >= 1");
  const std::uint64_t bound = partition_count_bound(p, size);
  if (bound > options.budget) {
    throw BudgetError("enumeration refused: p^I * I! = " + std::to_string(bound) +
                      " exceeds budget " + std::to_string(options.budget));
  }

  // Breadth-first over sizes with leaf-set dedup at every level; two cut
  // sequences reaching the same leaf set expand identically.
  std::vector<BinaryPartition> frontier{BinaryPartition::unit(p)};
  for (int step = 1; step < size; ++step) {
    std::vector<BinaryPartition> next;
    std::set<std::string> seen;
    for (const auto& partition : frontier) {
      for (std::size_t leaf = 0; leaf < partition.size(); ++leaf) {
        for (int dim = 0; dim < p; ++dim) {
          BinaryPartition child = partition;
          child.split_leaf(int(leaf), dim);
          if (seen.insert(child.canonical_text()).second) next.push_back(std::move(child));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(frontier.begin(), frontier.end(), [](const BinaryPartition& a, const BinaryPartition& b) {
    return a.canonical_text() < b.canonical_text();
  });
  return frontier;
}

std::vector<Overlap> common_refinement(const BinaryPartition& a, const BinaryPartition& b) {
  if (a.dim_count() != b.dim_count()) throw std::invalid_argument("partition dimension mismatch");
  std::vector<Overlap> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double v = region_overlap(a.leaf(int(i)), b.leaf(int(j)));
      if (v > 0.0) out.push_back(Overlap{int(i), int(j), v});
    }
  }
  return out;
}

}  // namespace adapart
