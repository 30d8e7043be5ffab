#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace adapart {

// Hard cap on the denominator exponent per dimension. Keeps every endpoint,
// midpoint and cell volume an exact double.
inline constexpr std::uint32_t kMaxDepth = 30;

// Half-open interval [lo/2^level, hi/2^level), kept in lowest terms
// (level minimal). Midpoint cuts always give hi == lo + 1; grid cuts can
// leave wider intervals.
struct DyadicInterval {
  std::uint32_t level = 0;
  std::uint64_t lo = 0;
  std::uint64_t hi = 1;

  void reduce() {
    while (level > 0 && (lo & 1) == 0 && (hi & 1) == 0) {
      lo >>= 1;
      hi >>= 1;
      --level;
    }
  }

  double lower() const;
  double upper() const;
  double length() const;  // exact: (hi-lo) * 2^-level
  bool unit_width() const { return hi == lo + 1; }

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  friend auto operator<=>(const DyadicInterval&, const DyadicInterval&) = default;
};

// Exact length of the intersection of two dyadic intervals (0 if disjoint).
double interval_overlap(const DyadicInterval& a, const DyadicInterval& b);

// Axis-aligned box in [0,1)^p with dyadic-rational sides.
class DyadicRegion {
 public:
  DyadicRegion() = default;
  explicit DyadicRegion(int p) : sides_(static_cast<std::size_t>(p)) {}
  explicit DyadicRegion(std::vector<DyadicInterval> sides) : sides_(std::move(sides)) {}

  int dim_count() const { return static_cast<int>(sides_.size()); }
  const DyadicInterval& side(int d) const { return sides_[static_cast<std::size_t>(d)]; }
  DyadicInterval& side(int d) { return sides_[static_cast<std::size_t>(d)]; }
  const std::vector<DyadicInterval>& sides() const { return sides_; }

  double volume() const;  // exact product of side lengths
  bool contains(std::span<const double> y) const;

  // "l:k" per dimension for unit-width sides, "l:lo-hi" otherwise,
  // dimensions joined by ','.
  std::string to_string() const;
  static DyadicRegion parse(const std::string& text);

  friend bool operator==(const DyadicRegion&, const DyadicRegion&) = default;
  friend auto operator<=>(const DyadicRegion&, const DyadicRegion&) = default;

 private:
  std::vector<DyadicInterval> sides_;
};

// Midpoint split along dimension `dim`. For a unit-width side at level l the
// children sit at level l+1 with offsets 2k and 2k+1.
std::pair<DyadicRegion, DyadicRegion> split_region(const DyadicRegion& region, int dim);

// Split at the global grid point k/2^grid_depth, which must lie strictly
// inside the region's side.
std::pair<DyadicRegion, DyadicRegion> split_region_at(const DyadicRegion& region, int dim,
                                                      std::uint32_t grid_depth, std::uint64_t k);

// Exact volume of a ∩ b (0 if disjoint). Dimensions must match.
double region_overlap(const DyadicRegion& a, const DyadicRegion& b);

// A binary partition of [0,1)^p: the cut tree plus its leaf regions.
// Leaf slots are stable except at a split, which reuses the parent's slot
// for the low child and appends the high child.
class BinaryPartition {
 public:
  static BinaryPartition unit(int p);

  int dim_count() const { return p_; }
  std::size_t size() const { return leaves_.size(); }
  std::size_t cut_count() const { return leaves_.size() - 1; }
  const std::vector<DyadicRegion>& leaves() const { return leaves_; }
  const DyadicRegion& leaf(int i) const { return leaves_[static_cast<std::size_t>(i)]; }

  // Leaf index containing y. Half-open cells; any coordinate equal to 1.0
  // falls into the last cell along that axis. Throws if y is outside [0,1]^p.
  int locate(std::span<const double> y) const;

  // Returns (low child slot == old slot, high child slot == size()-1).
  std::pair<int, int> split_leaf(int leaf, int dim);
  std::pair<int, int> split_leaf_at(int leaf, int dim, std::uint32_t grid_depth, std::uint64_t k);

  // Leaf indices sorted by (level, lo, hi) per dimension, lexicographically.
  std::vector<int> canonical_order() const;
  std::vector<std::string> canonical_leaf_strings() const;
  std::string canonical_text() const;  // one leaf per line, sorted

  // Cut history in application order: (dimension, cut coordinate, region cut).
  struct CutRecord {
    int dim;
    double point;
    DyadicRegion region;
  };
  const std::vector<CutRecord>& cuts() const { return cuts_; }

  friend bool operator==(const BinaryPartition& a, const BinaryPartition& b) {
    return a.p_ == b.p_ && a.sorted_leaves() == b.sorted_leaves();
  }

 private:
  std::vector<DyadicRegion> sorted_leaves() const;

  struct Node {
    int dim = -1;
    double point = 0.0;
    int low = -1;
    int high = -1;
    int leaf = -1;
  };

  int p_ = 0;
  std::vector<DyadicRegion> leaves_;
  std::vector<Node> nodes_;
  std::vector<int> leaf_node_;  // leaf slot -> node index
  std::vector<CutRecord> cuts_;
};

// Exact check that the leaves' volumes telescope to exactly 1 (binary-counter
// argument on the dyadic exponents; no floating point involved).
bool volumes_sum_to_one(const BinaryPartition& partition);

// Exact pairwise-disjointness check, O(I^2 p).
bool leaves_pairwise_disjoint(const BinaryPartition& partition);

struct EnumerationOptions {
  // Refusal threshold on the cut-sequence count bound p^I * I!.
  std::uint64_t budget = 100'000'000;
};

// All distinct binary partitions of size I (cut sequences with equal leaf
// sets identified), sorted by canonical text. Throws BudgetError when
// p^I * I! exceeds the budget.
std::vector<BinaryPartition> enumerate_partitions(int p, int size,
                                                  const EnumerationOptions& options = {});

// Saturating p^I * I!, used for the enumeration budget check.
std::uint64_t partition_count_bound(int p, int size);

struct Overlap {
  int leaf_a;
  int leaf_b;
  double volume;
};

// Nonzero-volume intersections between the leaves of two partitions over the
// same cube, ordered by (leaf_a, leaf_b).
std::vector<Overlap> common_refinement(const BinaryPartition& a, const BinaryPartition& b);

}  // namespace adapart
