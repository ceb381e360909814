#include "gwn/loops.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>

#include "gwn/error.hpp"

namespace gwn {

std::vector<LoopPartition> enumerate_partitions(int n) {
  if (n < 1 || n > kMaxLoopDegree)
    throw SizeError("enumerate_partitions: n must lie in 1.." + std::to_string(kMaxLoopDegree));
  std::vector<LoopPartition> out;
  // restricted growth string: a[0] = 0, a[i] <= max(a[0..i-1]) + 1
  std::vector<int> a(n, 0), mx(n, 0);
  while (true) {
    const int k = *std::max_element(a.begin(), a.end()) + 1;
    LoopPartition p;
    p.blocks.assign(k, {});
    for (int i = 0; i < n; ++i) p.blocks[a[i]].push_back(i + 1);
    for (const auto& b : p.blocks)
      for (std::uint64_t f = 2; f < b.size(); ++f) p.multiplicity *= f;
    out.push_back(std::move(p));

    int i = n - 1;
    while (i > 0 && a[i] == mx[i - 1] + 1) --i;
    if (i == 0) break;
    ++a[i];
    mx[i] = std::max(mx[i - 1], a[i]);
    for (int j = i + 1; j < n; ++j) {
      a[j] = 0;
      mx[j] = mx[i];
    }
  }
  return out;
}

const std::vector<BlockSignature>& block_signatures(int n) {
  static std::mutex mutex;
  static std::array<std::vector<BlockSignature>, kMaxLoopDegree + 1> cache;
  if (n < 1 || n > kMaxLoopDegree) throw SizeError("block_signatures: n out of range");
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot.empty()) {
    std::map<std::vector<int>, std::uint64_t, std::greater<>> grouped;
    for (const auto& p : enumerate_partitions(n)) {
      std::vector<int> sizes;
      for (const auto& b : p.blocks) sizes.push_back(static_cast<int>(b.size()));
      std::sort(sizes.rbegin(), sizes.rend());
      grouped[sizes] += p.multiplicity;
    }
    for (auto& [sizes, mult] : grouped) slot.push_back({sizes, mult});
  }
  return slot;
}

std::string format_blocks(const LoopPartition& p) {
  std::string s;
  for (const auto& b : p.blocks) {
    s += '{';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(b[i]);
    }
    s += '}';
  }
  return s;
}

}  // namespace gwn
