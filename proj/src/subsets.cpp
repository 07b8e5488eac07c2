#include "ccmm/subsets.hpp"

#include <algorithm>
#include <iterator>

namespace ccmm {

std::vector<UserSet> combinations(int n, int k) {
  std::vector<UserSet> out;
  if (k < 0 || k > n) return out;
  UserSet cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

bool contains(const UserSet& s, int x) { return std::binary_search(s.begin(), s.end(), x); }

UserSet without(const UserSet& s, int x) {
  UserSet out;
  std::copy_if(s.begin(), s.end(), std::back_inserter(out), [x](int v) { return v != x; });
  return out;
}

UserSet with(const UserSet& s, int x) {
  UserSet out = s;
  auto it = std::lower_bound(out.begin(), out.end(), x);
  if (it == out.end() || *it != x) out.insert(it, x);
  return out;
}

UserSet intersect(const UserSet& a, const UserSet& b) {
  UserSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::string to_string(const UserSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace ccmm
