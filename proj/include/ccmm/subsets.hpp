#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ccmm {

/// Sorted list of 1-based user (or position) labels.
using UserSet = std::vector<int>;

/// All k-subsets of {1..n} in lexicographic order; empty when k < 0 or k > n.
std::vector<UserSet> combinations(int n, int k);

bool contains(const UserSet& s, int x);
UserSet without(const UserSet& s, int x);
UserSet with(const UserSet& s, int x);
UserSet intersect(const UserSet& a, const UserSet& b);

/// "{1,3}".
std::string to_string(const UserSet& s);

}  // namespace ccmm
