#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <string>

#include "genloc/errors.hpp"
#include "genloc/lattice.hpp"

namespace genloc::lattice {

namespace {

constexpr int kMaxDim = 16;

struct Center {
  std::array<Coord, kMaxDim> c{};
  int dim = 0;
  Coord norm_sq = 0;
};

Center load_center(const LatticePoint& n) {
  if (n.dimension() > kMaxDim) throw DimensionError("partition supports N <= 16");
  Center out;
  out.dim = n.dimension();
  for (int i = 0; i < out.dim; ++i) out.c[static_cast<std::size_t>(i)] = n[static_cast<std::size_t>(i)];
  out.norm_sq = n.norm_sq();
  return out;
}

Coord dot_offset(const Center& n, const std::int32_t* v) {
  Coord s = 0;
  for (int i = 0; i < n.dim; ++i) s += n.c[static_cast<std::size_t>(i)] * v[i];
  return s;
}

// floor(d^2) where d is the distance of n + v from the line through 0 and n,
// |v|^2 = j. Integer-exact: d^2 = (j |n|^2 - (v.n)^2) / |n|^2.
Coord floor_axis_dist_sq(const Center& n, Coord j, Coord vn) {
  return (j * n.norm_sq - vn * vn) / n.norm_sq;
}

// Region q of the ring point n + v (|v|^2 = j, v.n = vn), or -1 for none.
Coord region_of(const Center& n, Coord k, Coord j, Coord vn, CylinderExtent extent) {
  const Coord q = floor_axis_dist_sq(n, j, vn);
  if (q >= 2 * k) return -1;
  if (extent == CylinderExtent::bounded) {
    // Axial coordinate from y0 = n - (k+1) u is t = vn/|n| + k + 1, with
    // t >= 0 automatic inside the ring. Keep t <= |n|, i.e.
    // (k+1)|n| <= |n|^2 - vn, squared in integers.
    const Coord slack = n.norm_sq - vn;
    if (slack < 0 || (k + 1) * (k + 1) * n.norm_sq > slack * slack) return -1;
  }
  return q;
}

void check_ranges(const Center& n, Coord k) {
  if (k < 1) throw ParameterError("ring radius k must be >= 1");
  // j |n|^2 with j < (k+1)^2 must fit comfortably in 64 bits.
  const double kk = static_cast<double>(k + 1) * static_cast<double>(k + 1);
  if (kk * static_cast<double>(n.norm_sq) > 4.0e18 || kk > 1.0e9)
    throw RangeError("center or ring radius too large for exact 64-bit geometry");
}

void check_table(const ShellTable& shells, int dim, Coord k) {
  if (shells.dimension() != dim) throw DimensionError("shell table dimension differs from center");
  if (shells.max_norm_sq() < (k + 1) * (k + 1) - 1)
    throw RangeError("shell table does not reach ring radius k=" + std::to_string(k));
}

enum class Bound { ok, violated };

// Minimum-norm bound for a ring point m = n + v assigned to index q.
// Returns the case id (1..3) through `which`.
Bound check_min_norm(const Center& n, Coord k, Coord q, Coord j, Coord vn, int& which) {
  const Coord a = n.norm_sq;
  const Coord m2 = a + 2 * vn + j;
  const Coord k1 = k + 1;
  if (a >= k1 * k1) {
    // |m|^2 >= (|n| - k - 1)^2 + q  <=>  L >= -2 (k+1) |n|
    which = 1;
    const Coord L = m2 - a - k1 * k1 - q;
    if (L >= 0) return Bound::ok;
    return L * L <= 4 * k1 * k1 * a ? Bound::ok : Bound::violated;
  }
  if (a > k * k) {
    which = 2;
    return m2 >= q ? Bound::ok : Bound::violated;
  }
  // 4 |m|^2 >= (|n| - k)^2 + q  <=>  L >= -2 k |n|
  which = 3;
  const Coord L = 4 * m2 - a - k * k - q;
  if (L >= 0) return Bound::ok;
  return L * L <= 4 * k * k * a ? Bound::ok : Bound::violated;
}

}  // namespace

std::string_view to_string(PartitionTag tag) {
  switch (tag) {
    case PartitionTag::geometric:
      return "geometric";
    case PartitionTag::fill:
      return "fill";
    case PartitionTag::canonical_dedup:
      return "canonical-dedup";
  }
  return "unknown";
}

Coord cardinality_bound(int dim, Coord q) {
  if (q < 0) throw ParameterError("set index must be nonnegative");
  Coord r = static_cast<Coord>(std::sqrt(static_cast<double>(q + 1)));
  while (r * r > q + 1) --r;
  while ((r + 1) * (r + 1) <= q + 1) ++r;
  return std::max<Coord>(1, (Coord{1} << dim) * r);
}

std::optional<Coord> region_index(const LatticePoint& m, const LatticePoint& n, Coord k,
                                  CylinderExtent extent) {
  if (m.dimension() != n.dimension()) throw DimensionError("lattice point dimensions differ");
  if (n.is_zero()) throw DegenerateCenterError("region_index needs a nonzero center");
  const Center c = load_center(n);
  check_ranges(c, k);
  const LatticePoint v = m - n;
  const Coord j = v.norm_sq();
  if (j < k * k || j >= (k + 1) * (k + 1))
    throw PreconditionError("point is not in the ring k <= |m - n| < k + 1");
  const Coord q = region_of(c, k, j, dot(v, n), extent);
  if (q < 0) return std::nullopt;
  return q;
}

PartitionQ build_partition(const LatticePoint& n, Coord k, CylinderExtent extent) {
  if (k < 1) throw ParameterError("ring radius k must be >= 1");
  const ShellTable shells(n.dimension(), (k + 1) * (k + 1) - 1);
  return build_partition(n, k, shells, extent);
}

PartitionQ build_partition(const LatticePoint& n, Coord k, const ShellTable& shells,
                           CylinderExtent extent) {
  const Center c = load_center(n);
  check_ranges(c, k);
  check_table(shells, c.dim, k);

  const Coord set_count = 2 * k;
  const auto P = static_cast<std::size_t>(2 * k + 1);
  PartitionQ out;
  out.center = n;
  out.k = k;
  out.extent = extent;
  out.sets.assign(static_cast<std::size_t>(set_count), {});
  out.owner.assign(P, -1);
  out.tag.assign(P, PartitionTag::fill);

  if (n.is_zero()) {
    out.degenerate = true;
    for (std::size_t p = 0; p < P; ++p) {
      out.sets[0].push_back(static_cast<Coord>(p));
      out.owner[p] = 0;
    }
    return out;
  }

  // hits[p] is a bitset over q: some m in S_p lies in region q.
  const std::size_t words = (static_cast<std::size_t>(set_count) + 63) / 64;
  std::vector<std::uint64_t> hits(P * words, 0);
  const auto d = static_cast<std::size_t>(c.dim);
  for (std::size_t p = 0; p < P; ++p) {
    const Coord j = k * k + static_cast<Coord>(p);
    const auto flat = shells.shell_coords(j);
    for (std::size_t i = 0; i < flat.size(); i += d) {
      const Coord q = region_of(c, k, j, dot_offset(c, flat.data() + i), extent);
      if (q >= 0) {
        const auto uq = static_cast<std::size_t>(q);
        hits[p * words + uq / 64] |= std::uint64_t{1} << (uq % 64);
      }
    }
  }
  auto has_hit = [&](std::size_t p, std::size_t q) {
    return (hits[p * words + q / 64] >> (q % 64)) & 1U;
  };
  auto hit_count = [&](std::size_t p) {
    int total = 0;
    for (std::size_t w = 0; w < words; ++w) total += std::popcount(hits[p * words + w]);
    return total;
  };

  auto assign = [&](std::size_t p, std::size_t q, PartitionTag tag) {
    out.owner[p] = static_cast<int>(q);
    out.tag[p] = tag;
    out.sets[q].push_back(static_cast<Coord>(p));
  };

  for (std::size_t q = 0; q < static_cast<std::size_t>(set_count); ++q) {
    for (std::size_t p = 0; p < P; ++p) {
      if (out.owner[p] < 0 && has_hit(p, q))
        assign(p, q, hit_count(p) > 1 ? PartitionTag::canonical_dedup : PartitionTag::geometric);
    }
    if (!out.sets[q].empty()) continue;
    // Fill: prefer a p no region claims, so geometric candidates keep their
    // own index.
    std::size_t pick = P;
    for (std::size_t p = 0; p < P && pick == P; ++p)
      if (out.owner[p] < 0 && hit_count(p) == 0) pick = p;
    for (std::size_t p = 0; p < P && pick == P; ++p)
      if (out.owner[p] < 0) pick = p;
    if (pick < P) assign(pick, q, PartitionTag::fill);
  }

  // 2k+1 values into 2k sets that each took at least one while any remained:
  // at most one p is left over.
  const auto last = static_cast<std::size_t>(set_count - 1);
  for (std::size_t p = 0; p < P; ++p) {
    if (out.owner[p] < 0) {
      assign(p, last, PartitionTag::fill);
      std::sort(out.sets[last].begin(), out.sets[last].end());
    }
  }
  return out;
}

MinNormReport min_norm_check(const PartitionQ& partition, MinNormScope scope) {
  if (partition.degenerate) return MinNormReport{false, 0, {}};
  const Coord k = partition.k;
  const ShellTable shells(partition.center.dimension(), (k + 1) * (k + 1) - 1);
  return min_norm_check(partition, shells, scope);
}

MinNormReport min_norm_check(const PartitionQ& partition, const ShellTable& shells,
                             MinNormScope scope) {
  MinNormReport report;
  if (partition.degenerate) {
    report.applicable = false;
    return report;
  }
  const Center c = load_center(partition.center);
  const Coord k = partition.k;
  check_ranges(c, k);
  check_table(shells, c.dim, k);
  if (partition.owner.size() != static_cast<std::size_t>(2 * k + 1))
    throw PreconditionError("partition owner table has wrong size");

  const auto d = static_cast<std::size_t>(c.dim);
  for (Coord p = 0; p <= 2 * k; ++p) {
    const auto up = static_cast<std::size_t>(p);
    const PartitionTag tag = partition.tag[up];
    if (scope == MinNormScope::geometric_only && tag == PartitionTag::fill) continue;
    const Coord q = partition.owner[up];
    const Coord j = k * k + p;
    const auto flat = shells.shell_coords(j);
    for (std::size_t i = 0; i < flat.size(); i += d) {
      const Coord vn = dot_offset(c, flat.data() + i);
      if (scope == MinNormScope::geometric_only && region_of(c, k, j, vn, partition.extent) != q)
        continue;
      ++report.checked;
      int which = 0;
      if (check_min_norm(c, k, q, j, vn, which) == Bound::violated) {
        std::vector<Coord> m(d);
        for (std::size_t a = 0; a < d; ++a) m[a] = c.c[a] + flat[i + a];
        report.violations.push_back({q, p, LatticePoint(std::move(m)), which});
      }
    }
  }
  return report;
}

}  // namespace genloc::lattice
