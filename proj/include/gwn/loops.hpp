#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gwn {

// Set partition of {1..n}; multiplicity counts the cyclic orders of its blocks.
struct LoopPartition {
  std::vector<std::vector<int>> blocks;  // 1-based positions, blocks ordered by first element
  std::uint64_t multiplicity = 1;        // prod (|B|-1)!
};

constexpr int kMaxLoopDegree = 10;

// All set partitions of {1..n}, 1 <= n <= 10, in restricted-growth order.
std::vector<LoopPartition> enumerate_partitions(int n);

// Partitions grouped by sorted block sizes: total multiplicity per signature.
struct BlockSignature {
  std::vector<int> sizes;  // non-increasing
  std::uint64_t multiplicity = 0;
};
const std::vector<BlockSignature>& block_signatures(int n);

std::string format_blocks(const LoopPartition& p);

}  // namespace gwn
