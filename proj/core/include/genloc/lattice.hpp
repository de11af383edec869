#pragma once

// Integer lattice utilities: balls, spheres (shells) and the ring partition
// used to regroup shell sums around a center n.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace genloc::lattice {

using Coord = std::int64_t;

/// A point of Z^N. Squared norms are always computed in integer arithmetic.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords);
  LatticePoint(std::initializer_list<Coord> coords);

  static LatticePoint zero(int dim);

  int dimension() const { return static_cast<int>(coords_.size()); }
  std::span<const Coord> coords() const { return coords_; }
  Coord operator[](std::size_t i) const { return coords_[i]; }

  Coord norm_sq() const;
  bool is_zero() const;

  friend LatticePoint operator+(const LatticePoint& a, const LatticePoint& b);
  friend LatticePoint operator-(const LatticePoint& a, const LatticePoint& b);
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Coord> coords_;
};

Coord dot(const LatticePoint& a, const LatticePoint& b);
Coord distance_sq(const LatticePoint& a, const LatticePoint& b);

/// All n with |n|^2 < lambda, in lexicographic order.
std::vector<LatticePoint> enumerate_ball(double lambda, int dim);

/// All m with |m|^2 == j, in lexicographic order (possibly empty).
std::vector<LatticePoint> sphere_shell(Coord j, int dim);

/// S_p = { m : |m - n|^2 = k^2 + p }, 0 <= p <= 2k.
std::vector<LatticePoint> shifted_shell(const LatticePoint& n, Coord k, Coord p);

/// Number of lattice points r_N(j) on the sphere |m|^2 = j.
std::size_t shell_count(Coord j, int dim);

/// Precomputed shells 0..max_norm_sq stored flat (dimension-strided int32).
/// Built from a single ball scan; every point lands in exactly one shell and
/// each shell keeps lexicographic order.
class ShellTable {
 public:
  ShellTable(int dim, Coord max_norm_sq);

  int dimension() const { return dim_; }
  Coord max_norm_sq() const { return max_norm_sq_; }

  std::size_t shell_size(Coord j) const;
  /// Flat coordinates of shell j: shell_size(j) * dimension() entries.
  std::span<const std::int32_t> shell_coords(Coord j) const;
  std::vector<LatticePoint> shell(Coord j) const;
  std::size_t total_points() const { return coords_.size() / static_cast<std::size_t>(dim_); }

 private:
  void check(Coord j) const;

  int dim_;
  Coord max_norm_sq_;
  std::vector<std::int32_t> coords_;
  std::vector<std::size_t> offsets_;  // in points, size max_norm_sq + 2
};

// ---------------------------------------------------------------------------
// Ring partition

enum class PartitionTag : std::uint8_t { geometric, fill, canonical_dedup };

/// Axial extent of the cylinders C_q^k. `bounded` keeps only points whose
/// projection on the axis lies within |n| of y0 (measured toward n);
/// `unbounded` ignores the axial coordinate.
enum class CylinderExtent : std::uint8_t { bounded, unbounded };

std::string_view to_string(PartitionTag tag);

/// Index sets Q_q^k (q = 0..2k-1) partitioning {0, ..., 2k} for a center n.
struct PartitionQ {
  LatticePoint center;
  Coord k = 0;
  std::vector<std::vector<Coord>> sets;  // sets[q], ascending p
  std::vector<int> owner;                // owner[p] = q
  std::vector<PartitionTag> tag;         // tag[p]
  bool degenerate = false;               // n == 0 fallback: everything in Q_0
  CylinderExtent extent = CylinderExtent::unbounded;

  std::size_t set_count() const { return sets.size(); }
};

/// max(1, 2^N * floor(sqrt(q + 1)))
Coord cardinality_bound(int dim, Coord q);

/// Cylinder index of a ring point m (k <= |m - n| < k + 1) relative to the
/// axis through the origin and n. Empty when the orthogonal distance d from
/// the axis has d^2 >= 2k, or (bounded extent) when m lies beyond the far end
/// of the cylinder. Throws DegenerateCenterError for n == 0 and
/// PreconditionError when m is not in the ring.
std::optional<Coord> region_index(const LatticePoint& m, const LatticePoint& n, Coord k,
                                  CylinderExtent extent = CylinderExtent::unbounded);

PartitionQ build_partition(const LatticePoint& n, Coord k,
                           CylinderExtent extent = CylinderExtent::unbounded);
/// Same construction reading the ring from a prebuilt table; the table must
/// reach (k + 1)^2 - 1.
PartitionQ build_partition(const LatticePoint& n, Coord k, const ShellTable& shells,
                           CylinderExtent extent = CylinderExtent::unbounded);

enum class MinNormScope {
  geometric_only,  // p tagged geometric / canonical-dedup, m in its own region
  all_members,     // every m in S_p for every p in Q_q^k
};

struct MinNormViolation {
  Coord q = 0;
  Coord p = 0;
  LatticePoint m;
  int bound_case = 0;  // 1: |n| >= k+1, 2: k < |n| < k+1, 3: |n| <= k
};

struct MinNormReport {
  bool applicable = true;  // false for the degenerate fallback
  std::size_t checked = 0;
  std::vector<MinNormViolation> violations;
};

MinNormReport min_norm_check(const PartitionQ& partition,
                             MinNormScope scope = MinNormScope::geometric_only);
MinNormReport min_norm_check(const PartitionQ& partition, const ShellTable& shells,
                             MinNormScope scope = MinNormScope::geometric_only);

}  // namespace genloc::lattice
