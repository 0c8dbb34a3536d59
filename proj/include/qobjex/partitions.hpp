#ifndef QOBJEX_PARTITIONS_HPP
#define QOBJEX_PARTITIONS_HPP

#include <functional>
#include <span>
#include <vector>

#include "qobjex/exactcount.hpp"

namespace qobjex {

/// Visits every r-subset of {0..n-1} as a sorted index list, in
/// lexicographic order. Returns the number visited.
long for_each_combination(int n, int r, const std::function<void(std::span<const int>)>& visit);

/// label[i] is the block of item i.
using BlockLabels = std::vector<int>;

/// Visits each unordered partition of {0..items-1} into `blocks` blocks of
/// equal size exactly once. Labels are canonical: block b is the b-th block
/// to appear when scanning items in order.
long for_each_equal_partition(int items, int blocks, const std::function<void(const BlockLabels&)>& visit);

/// Same, but visits every labelled (ordered) partition: blocks! times as many.
long for_each_ordered_equal_partition(int items, int blocks, const std::function<void(const BlockLabels&)>& visit);

/// items! / ((items/blocks)!^blocks * blocks!) unordered, or without the blocks! factor.
BigCount count_equal_partitions(long items, long blocks, bool ordered);

/// Members of each block, sorted.
std::vector<std::vector<int>> blocks_of(const BlockLabels& labels, int blocks);

}  // namespace qobjex

#endif  // QOBJEX_PARTITIONS_HPP
