#include "district/partition.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <stdexcept>

namespace district {

namespace {

void canonicalize(BoundaryPartition& p) {
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  p.ground.clear();
  for (const auto& b : p.blocks) p.ground.insert(p.ground.end(), b.begin(), b.end());
  std::sort(p.ground.begin(), p.ground.end());
}

}  // namespace

BoundaryPartition BoundaryPartition::singletons(std::vector<VertexId> ground) {
  BoundaryPartition p;
  std::sort(ground.begin(), ground.end());
  p.ground = ground;
  for (VertexId v : ground) p.blocks.push_back({v});
  return p;
}

BoundaryPartition BoundaryPartition::from_blocks(std::vector<std::vector<VertexId>> blocks) {
  BoundaryPartition p;
  for (auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    p.blocks.push_back(std::move(b));
  }
  canonicalize(p);
  for (std::size_t i = 1; i < p.ground.size(); ++i)
    if (p.ground[i] == p.ground[i - 1]) throw std::invalid_argument("blocks not disjoint");
  return p;
}

int BoundaryPartition::block_of(VertexId v) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (std::binary_search(blocks[i].begin(), blocks[i].end(), v)) return static_cast<int>(i);
  return -1;
}

bool BoundaryPartition::same_block(VertexId a, VertexId b) const {
  int ia = block_of(a);
  return ia >= 0 && ia == block_of(b);
}

std::vector<VertexId> BoundaryPartition::representatives() const {
  std::vector<VertexId> reps;
  reps.reserve(blocks.size());
  for (const auto& b : blocks) reps.push_back(b.front());
  return reps;
}

bool is_noncrossing(const BoundaryPartition& p, const std::vector<VertexId>& cyclic_order) {
  if (cyclic_order.size() != p.ground.size())
    throw std::invalid_argument("cyclic order size mismatch");
  std::map<VertexId, int> pos;
  for (std::size_t i = 0; i < cyclic_order.size(); ++i) {
    if (!pos.emplace(cyclic_order[i], static_cast<int>(i)).second)
      throw std::invalid_argument("cyclic order repeats an element");
  }
  // Positions of each block along the order.
  std::vector<std::vector<int>> bp(p.blocks.size());
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    for (VertexId v : p.blocks[i]) {
      auto it = pos.find(v);
      if (it == pos.end()) throw std::invalid_argument("cyclic order misses an element");
      bp[i].push_back(it->second);
    }
    std::sort(bp[i].begin(), bp[i].end());
  }
  // Two blocks cross iff their positions interleave: merged scan alternates
  // block owner at least three times (pattern a b a b).
  for (std::size_t i = 0; i < bp.size(); ++i) {
    for (std::size_t j = i + 1; j < bp.size(); ++j) {
      std::size_t ii = 0, jj = 0;
      int switches = 0, last = -1;
      while (ii < bp[i].size() || jj < bp[j].size()) {
        int owner;
        if (jj >= bp[j].size() || (ii < bp[i].size() && bp[i][ii] < bp[j][jj])) {
          owner = 0;
          ++ii;
        } else {
          owner = 1;
          ++jj;
        }
        if (owner != last) {
          if (last >= 0) ++switches;
          last = owner;
        }
      }
      if (switches >= 3) return false;
    }
  }
  return true;
}

std::vector<BoundaryPartition> enumerate_partitions(const std::vector<VertexId>& ground) {
  std::vector<VertexId> g = ground;
  std::sort(g.begin(), g.end());
  std::size_t m = g.size();
  std::vector<BoundaryPartition> out;
  if (m == 0) {
    out.push_back(BoundaryPartition{});
    return out;
  }
  // Restricted growth strings in lexicographic order.
  std::vector<std::uint8_t> rgs(m, 0);
  while (true) {
    out.push_back(decode_rgs(g, rgs));
    // next RGS: rightmost position that may still grow
    bool advanced = false;
    for (std::size_t i = m; i-- > 1;) {
      std::uint8_t maxprev = 0;
      for (std::size_t j = 0; j < i; ++j) maxprev = std::max(maxprev, rgs[j]);
      if (rgs[i] <= maxprev) {
        ++rgs[i];
        for (std::size_t j = i + 1; j < m; ++j) rgs[j] = 0;
        advanced = true;
        break;
      }
      rgs[i] = 0;
    }
    if (!advanced) break;
  }
  return out;
}

std::vector<BoundaryPartition> enumerate_noncrossing(const std::vector<VertexId>& cyclic_order) {
  std::vector<BoundaryPartition> out;
  for (auto& p : enumerate_partitions(cyclic_order))
    if (is_noncrossing(p, cyclic_order)) out.push_back(std::move(p));
  return out;
}

namespace {

struct UnionFind {
  std::map<VertexId, VertexId> parent;
  VertexId find(VertexId x) {
    auto it = parent.find(x);
    if (it == parent.end()) {
      parent[x] = x;
      return x;
    }
    if (it->second == x) return x;
    VertexId r = find(it->second);
    parent[x] = r;
    return r;
  }
  void unite(VertexId a, VertexId b) { parent[find(a)] = find(b); }
};

}  // namespace

BoundaryPartition join(const BoundaryPartition& p1, const BoundaryPartition& p2) {
  UnionFind uf;
  for (const auto* p : {&p1, &p2}) {
    for (const auto& b : p->blocks) {
      uf.find(b.front());
      for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[i], b.front());
    }
  }
  std::map<VertexId, std::vector<VertexId>> groups;
  for (const auto& [v, _] : std::map<VertexId, VertexId>(uf.parent))
    groups[uf.find(v)].push_back(v);
  std::vector<std::vector<VertexId>> blocks;
  for (auto& [_, g] : groups) blocks.push_back(std::move(g));
  return BoundaryPartition::from_blocks(std::move(blocks));
}

BoundaryPartition restrict_to(const BoundaryPartition& p, const std::vector<VertexId>& subset) {
  std::vector<VertexId> sub = subset;
  std::sort(sub.begin(), sub.end());
  std::vector<std::vector<VertexId>> blocks;
  for (const auto& b : p.blocks) {
    std::vector<VertexId> nb;
    for (VertexId v : b)
      if (std::binary_search(sub.begin(), sub.end(), v)) nb.push_back(v);
    if (!nb.empty()) blocks.push_back(std::move(nb));
  }
  return BoundaryPartition::from_blocks(std::move(blocks));
}

std::vector<std::uint8_t> encode_rgs(const BoundaryPartition& p) {
  std::vector<std::uint8_t> rgs;
  rgs.reserve(p.ground.size());
  std::map<int, std::uint8_t> label;  // block index -> growth label
  for (VertexId v : p.ground) {
    int b = p.block_of(v);
    auto it = label.find(b);
    if (it == label.end()) {
      std::uint8_t l = static_cast<std::uint8_t>(label.size());
      label[b] = l;
      rgs.push_back(l);
    } else {
      rgs.push_back(it->second);
    }
  }
  return rgs;
}

BoundaryPartition decode_rgs(const std::vector<VertexId>& sorted_ground,
                             const std::vector<std::uint8_t>& rgs) {
  if (sorted_ground.size() != rgs.size()) throw std::invalid_argument("rgs size mismatch");
  std::vector<std::vector<VertexId>> blocks;
  for (std::size_t i = 0; i < rgs.size(); ++i) {
    if (rgs[i] >= blocks.size()) {
      if (rgs[i] != blocks.size()) throw std::invalid_argument("not a restricted growth string");
      blocks.emplace_back();
    }
    blocks[rgs[i]].push_back(sorted_ground[i]);
  }
  return BoundaryPartition::from_blocks(std::move(blocks));
}

}  // namespace district
