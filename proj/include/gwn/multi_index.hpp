#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gwn {

// Binomial coefficient from a cached Pascal table (n < 68).
std::uint64_t binomial(int n, int k);

double factorial(int n);

// Sorted multi-indices of length n over m atoms, ranked in colex order of
// the combination c_k = t_k + k:  rank(t) = sum_k C(t_k + k, k + 1).
class MultiIndexSpace {
 public:
  MultiIndexSpace(int atoms, int degree);

  int atoms() const { return atoms_; }
  int degree() const { return degree_; }
  std::int64_t size() const { return size_; }

  std::span<const int> tuple(std::int64_t rank) const {
    return {tuples_.data() + rank * degree_, static_cast<std::size_t>(degree_)};
  }
  // n!/prod(count!), the number of ordered tuples with this multiset.
  double arrangements(std::int64_t rank) const { return arrangements_[rank]; }

  // Rank of a tuple already sorted ascending.
  std::int64_t rank_sorted(std::span<const int> sorted) const;
  // Rank of a tuple in any order (copied and sorted).
  std::int64_t rank_any(std::span<const int> tuple) const;

 private:
  int atoms_;
  int degree_;
  std::int64_t size_;
  std::vector<int> tuples_;
  std::vector<double> arrangements_;
};

// Shared, lazily built index tables (thread-safe).
const MultiIndexSpace& multi_index_space(int atoms, int degree);

// Rank of the sorted tuple t with one extra atom a inserted (degree n+1).
std::int64_t rank_with(std::span<const int> t, int a);
// Rank of t with the entry at position p removed (degree n-1).
std::int64_t rank_without(std::span<const int> t, int p);
// Rank of t with positions p != q removed (degree n-2).
std::int64_t rank_without2(std::span<const int> t, int p, int q);

}  // namespace gwn
