#pragma once
// Partitions of boundary vertex sets: crossing tests, enumeration, join,
// representatives, restricted-growth encoding.

#include <compare>
#include <cstdint>
#include <vector>

namespace district {

using VertexId = std::uint32_t;

// A partition of a finite set of vertex ids.  Canonical form: ground sorted
// ascending; blocks ordered by smallest member; members ascending.  Block
// order therefore coincides with representative order (smallest-id first).
struct BoundaryPartition {
  std::vector<VertexId> ground;
  std::vector<std::vector<VertexId>> blocks;

  static BoundaryPartition singletons(std::vector<VertexId> ground);
  static BoundaryPartition from_blocks(std::vector<std::vector<VertexId>> blocks);

  std::size_t block_count() const { return blocks.size(); }
  // Index of the block containing v, or -1 if v is not in the ground set.
  int block_of(VertexId v) const;
  bool same_block(VertexId a, VertexId b) const;
  // Smallest-id member of each block, in block order.
  std::vector<VertexId> representatives() const;

  bool operator==(const BoundaryPartition&) const = default;
  auto operator<=>(const BoundaryPartition&) const = default;
};

// Chord-crossing test w.r.t. a cyclic arrangement of the ground set.
// Crossing is invariant under rotation, so one linearization suffices.
bool is_noncrossing(const BoundaryPartition& p, const std::vector<VertexId>& cyclic_order);

// All set partitions of the ground set, in restricted-growth-string order.
std::vector<BoundaryPartition> enumerate_partitions(const std::vector<VertexId>& ground);

// The noncrossing partitions w.r.t. the given cyclic order; Catalan(m) many.
std::vector<BoundaryPartition> enumerate_noncrossing(const std::vector<VertexId>& cyclic_order);

// Least common coarsening.  Ground sets may differ; the result is a
// partition of the union.
BoundaryPartition join(const BoundaryPartition& p1, const BoundaryPartition& p2);

// Restriction to a subset of the ground (subset need not be sorted).
BoundaryPartition restrict_to(const BoundaryPartition& p, const std::vector<VertexId>& subset);

// Restricted-growth string over the ascending ground order.  Injective for a
// fixed ground set; decode(encode(p)) == p.
std::vector<std::uint8_t> encode_rgs(const BoundaryPartition& p);
BoundaryPartition decode_rgs(const std::vector<VertexId>& sorted_ground,
                             const std::vector<std::uint8_t>& rgs);

}  // namespace district
