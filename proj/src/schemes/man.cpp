#include "man.hpp"

namespace ccmm::detail {

std::vector<Symbol> chunk(const std::vector<Symbol>& file, std::size_t index, std::size_t len) {
  const auto begin = file.begin() + static_cast<std::ptrdiff_t>(index * len);
  return {begin, begin + static_cast<std::ptrdiff_t>(len)};
}

std::vector<Symbol> man_recover(const FieldSpec& field, int K, int t, int k,
                                const std::function<std::vector<Symbol>(const UserSet&)>& own,
                                const std::function<std::vector<Symbol>(const UserSet&)>& payload,
                                const std::function<std::vector<Symbol>(int, const UserSet&)>& peer) {
  std::vector<Symbol> out;
  for (const UserSet& T : combinations(K, t)) {
    if (contains(T, k)) {
      const auto piece = own(T);
      out.insert(out.end(), piece.begin(), piece.end());
      continue;
    }
    const UserSet S = with(T, k);
    std::vector<Symbol> piece = payload(S);
    for (int j : S) {
      if (j != k) subtract_from(field, piece, peer(j, without(S, j)));
    }
    out.insert(out.end(), piece.begin(), piece.end());
  }
  return out;
}

}  // namespace ccmm::detail
