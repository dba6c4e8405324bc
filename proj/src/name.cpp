#include "hopi/name.hpp"

namespace hopi {

Name fresh_name(const NameSet& avoid, std::string_view hint) {
  std::string base(hint.empty() ? "n" : hint);
  // Strip a numeric suffix so fresh_name({d1}, "d1") yields d2, not d11.
  std::size_t cut = base.size();
  while (cut > 1 && base[cut - 1] >= '0' && base[cut - 1] <= '9') --cut;
  base.resize(cut);
  if (base[0] == '#') base = "n";

  Name candidate(base, base);
  if (!avoid.count(candidate)) return candidate;
  for (unsigned long i = 1;; ++i) {
    candidate.id = base + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

std::vector<Name> fresh_names(const NameSet& avoid, std::size_t k,
                              std::string_view hint) {
  NameSet used = avoid;
  std::vector<Name> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    Name n = fresh_name(used, hint);
    used.insert(n);
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace hopi
