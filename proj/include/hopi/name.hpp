#ifndef HOPI_NAME_HPP
#define HOPI_NAME_HPP

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hopi {

// A name (or variable) identifier. Identity is `id` alone; `hint` is a
// display base kept so that binders renamed during canonicalization or
// scope extrusion can be shown with a readable name again.
//
// Identifiers starting with '#' are reserved for canonical bound names and
// are not accepted by the parser, so they can never occur free in a term
// that entered the system through the public surface.
struct Name {
  std::string id;
  std::string hint;
  // Constant vs variable class, derived from binding position (input and
  // abstraction binders introduce variables, restriction introduces
  // constants, free occurrences are constants). Presentation metadata:
  // not part of identity.
  bool is_var = false;

  Name() = default;
  explicit Name(std::string i) : id(std::move(i)), hint(id) {}
  Name(std::string i, std::string h) : id(std::move(i)), hint(std::move(h)) {}
  Name(std::string i, std::string h, bool v)
      : id(std::move(i)), hint(std::move(h)), is_var(v) {}

  bool operator==(const Name& o) const { return id == o.id; }
  bool operator!=(const Name& o) const { return id != o.id; }
  bool operator<(const Name& o) const { return id < o.id; }

  bool internal() const { return !id.empty() && id[0] == '#'; }
  const std::string& pretty_base() const { return hint.empty() ? id : hint; }
};

using NameSet = std::set<Name>;

// Deterministic freshness: tries hint, hint1, hint2, ... and returns the
// first identifier not in `avoid`. Same avoid set and hint => same result.
Name fresh_name(const NameSet& avoid, std::string_view hint = "n");

// k distinct fresh names, each avoiding `avoid` and the earlier picks.
std::vector<Name> fresh_names(const NameSet& avoid, std::size_t k,
                              std::string_view hint = "n");

inline void add_all(NameSet& into, const NameSet& from) {
  into.insert(from.begin(), from.end());
}

}  // namespace hopi

#endif
