#include "gwn/multi_index.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "gwn/error.hpp"

namespace gwn {
namespace {

constexpr int kPascal = 68;

const std::array<std::array<std::uint64_t, kPascal>, kPascal>& pascal() {
  static const auto table = [] {
    std::array<std::array<std::uint64_t, kPascal>, kPascal> c{};
    for (int n = 0; n < kPascal; ++n) {
      c[n][0] = 1;
      for (int k = 1; k <= n; ++k) c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
    }
    return c;
  }();
  return table;
}

constexpr std::int64_t kMaxSpace = 20'000'000;
constexpr int kMaxDegree = 32;

}  // namespace

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n >= kPascal) throw SizeError("binomial: n too large");
  return pascal()[n][k];
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

MultiIndexSpace::MultiIndexSpace(int atoms, int degree) : atoms_(atoms), degree_(degree) {
  if (atoms < 1) throw DimensionError("multi-index space needs at least one atom");
  if (degree < 0 || degree > kMaxDegree) throw SizeError("tensor degree out of range");
  if (atoms + degree >= kPascal) throw SizeError("too many atoms for the index tables");
  const std::uint64_t count = binomial(atoms + degree - 1, degree);
  if (count > static_cast<std::uint64_t>(kMaxSpace))
    throw SizeError("symmetric tensor too large: " + std::to_string(count) + " entries");
  size_ = static_cast<std::int64_t>(count);
  tuples_.assign(static_cast<std::size_t>(size_ * degree_), 0);
  arrangements_.assign(static_cast<std::size_t>(size_), 1.0);

  const double nfact = factorial(degree_);
  std::vector<int> t(degree_, 0);
  for (std::int64_t visited = 0; visited < size_; ++visited) {
    const std::int64_t r = rank_sorted(t);
    std::copy(t.begin(), t.end(), tuples_.begin() + r * degree_);
    double denom = 1.0;
    for (int i = 0, run = 1; i < degree_; ++i) {
      if (i > 0 && t[i] == t[i - 1])
        ++run;
      else
        run = 1;
      denom *= run;
    }
    arrangements_[r] = nfact / denom;
    // next non-decreasing tuple
    int k = degree_ - 1;
    while (k >= 0 && t[k] == atoms_ - 1) --k;
    if (k < 0) break;
    ++t[k];
    for (int j = k + 1; j < degree_; ++j) t[j] = t[k];
  }
}

std::int64_t MultiIndexSpace::rank_sorted(std::span<const int> sorted) const {
  std::int64_t r = 0;
  for (int k = 0; k < static_cast<int>(sorted.size()); ++k)
    r += static_cast<std::int64_t>(pascal()[sorted[k] + k][k + 1]);
  return r;
}

std::int64_t MultiIndexSpace::rank_any(std::span<const int> tuple) const {
  if (static_cast<int>(tuple.size()) != degree_) throw DimensionError("tuple length != tensor degree");
  std::array<int, kMaxDegree> buf{};
  std::copy(tuple.begin(), tuple.end(), buf.begin());
  for (int k = 0; k < degree_; ++k)
    if (buf[k] < 0 || buf[k] >= atoms_) throw DimensionError("tuple entry out of atom range");
  std::sort(buf.begin(), buf.begin() + degree_);
  return rank_sorted({buf.data(), static_cast<std::size_t>(degree_)});
}

const MultiIndexSpace& multi_index_space(int atoms, int degree) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<MultiIndexSpace>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{atoms, degree}];
  if (!slot) slot = std::make_unique<MultiIndexSpace>(atoms, degree);
  return *slot;
}

namespace {
std::int64_t colex(const int* t, int n) {
  std::int64_t r = 0;
  for (int k = 0; k < n; ++k) r += static_cast<std::int64_t>(pascal()[t[k] + k][k + 1]);
  return r;
}
}  // namespace

std::int64_t rank_with(std::span<const int> t, int a) {
  std::array<int, kMaxDegree + 1> buf{};
  int n = 0;
  bool placed = false;
  for (int x : t) {
    if (!placed && a <= x) {
      buf[n++] = a;
      placed = true;
    }
    buf[n++] = x;
  }
  if (!placed) buf[n++] = a;
  return colex(buf.data(), n);
}

std::int64_t rank_without(std::span<const int> t, int p) {
  std::array<int, kMaxDegree> buf{};
  int n = 0;
  for (int k = 0; k < static_cast<int>(t.size()); ++k)
    if (k != p) buf[n++] = t[k];
  return colex(buf.data(), n);
}

std::int64_t rank_without2(std::span<const int> t, int p, int q) {
  std::array<int, kMaxDegree> buf{};
  int n = 0;
  for (int k = 0; k < static_cast<int>(t.size()); ++k)
    if (k != p && k != q) buf[n++] = t[k];
  return colex(buf.data(), n);
}

}  // namespace gwn
