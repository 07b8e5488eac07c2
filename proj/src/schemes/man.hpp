#pragma once

#include <functional>
#include <vector>

#include "ccmm/model.hpp"

namespace ccmm::detail {

// Slice [index * len, (index + 1) * len) of a flat symbol vector.
std::vector<Symbol> chunk(const std::vector<Symbol>& file, std::size_t index, std::size_t len);

// Recovers the chunks of user k's file for every t-subset T (lexicographic) and concatenates them.
// `own(T)` returns the cached chunk (k in T); `payload(S)` the multicast for S = T + {k};
// `peer(j, T)` the cached chunk of user j's file for a T containing k.
std::vector<Symbol> man_recover(const FieldSpec& field, int K, int t, int k,
                                const std::function<std::vector<Symbol>(const UserSet&)>& own,
                                const std::function<std::vector<Symbol>(const UserSet&)>& payload,
                                const std::function<std::vector<Symbol>(int, const UserSet&)>& peer);

}  // namespace ccmm::detail
