#include "qobjex/partitions.hpp"

#include <algorithm>

#include "qobjex/error.hpp"

namespace qobjex {

long for_each_combination(int n, int r, const std::function<void(std::span<const int>)>& visit) {
  if (n < 0 || r < 0 || r > n) return 0;
  std::vector<int> idx(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
  long visited = 0;
  while (true) {
    visit(idx);
    ++visited;
    int i = r - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return visited;
}

namespace {

struct PartitionWalk {
  int items;
  int blocks;
  int block_size;
  bool ordered;
  const std::function<void(const BlockLabels&)>& visit;
  BlockLabels labels;
  std::vector<int> fill;
  long visited = 0;

  void run(int item, int opened) {
    if (item == items) {
      visit(labels);
      ++visited;
      return;
    }
    // unordered: an item may only open the lowest unused block
    const int limit = ordered ? blocks : std::min(opened + 1, blocks);
    for (int b = 0; b < limit; ++b) {
      auto& f = fill[static_cast<std::size_t>(b)];
      if (f == block_size) continue;
      ++f;
      labels[static_cast<std::size_t>(item)] = b;
      run(item + 1, std::max(opened, b + 1));
      --f;
    }
  }
};

long walk_partitions(int items, int blocks, bool ordered, const std::function<void(const BlockLabels&)>& visit) {
  if (blocks < 1 || items < 0 || items % blocks != 0) {
    throw InputError("equal-block partition needs blocks >= 1 dividing the item count");
  }
  PartitionWalk walk{items,   blocks, items / blocks, ordered, visit, BlockLabels(static_cast<std::size_t>(items), 0),
                     std::vector<int>(static_cast<std::size_t>(blocks), 0)};
  walk.run(0, 0);
  return walk.visited;
}

}  // namespace

long for_each_equal_partition(int items, int blocks, const std::function<void(const BlockLabels&)>& visit) {
  return walk_partitions(items, blocks, false, visit);
}

long for_each_ordered_equal_partition(int items, int blocks, const std::function<void(const BlockLabels&)>& visit) {
  return walk_partitions(items, blocks, true, visit);
}

BigCount count_equal_partitions(long items, long blocks, bool ordered) {
  if (blocks < 1 || items < 0 || items % blocks != 0) {
    throw InputError("equal-block partition needs blocks >= 1 dividing the item count");
  }
  const FactorialTable table(std::max(items, blocks));
  const long size = items / blocks;
  std::vector<long> parts(static_cast<std::size_t>(blocks), size);
  BigCount out = table.multinomial(parts);
  if (!ordered) {
    BigCount tmp;
    mpz_divexact(tmp.get_mpz_t(), out.get_mpz_t(), table.factorial(blocks).get_mpz_t());
    out = tmp;
  }
  return out;
}

std::vector<std::vector<int>> blocks_of(const BlockLabels& labels, int blocks) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(blocks));
  for (std::size_t i = 0; i < labels.size(); ++i) out[static_cast<std::size_t>(labels[i])].push_back(static_cast<int>(i));
  return out;
}

}  // namespace qobjex
