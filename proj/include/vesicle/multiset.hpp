#pragma once

// Finite multisets over an interned symbol alphabet. A vesicle is exactly a
// Multiset: the objects carried on its membrane.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vesicle {

using Count = std::uint64_t;

/// Thrown for malformed text in any of the project's input formats.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Interned symbol name. Copies are pointer-sized; two symbols are equal iff
/// their names are equal. Ordering is lexicographic by name.
class Symbol {
 public:
  /// Interns `name` after checking the name grammar. Reserved ("@") names
  /// are accepted here; use `user` to reject them.
  explicit Symbol(std::string_view name);

  /// Same as the constructor but rejects names with the reserved prefix.
  static Symbol user(std::string_view name);

  static bool valid_name(std::string_view name);
  static bool is_reserved(std::string_view name) { return !name.empty() && name.front() == '@'; }

  const std::string& name() const { return *name_; }
  bool reserved() const { return is_reserved(*name_); }

  friend bool operator==(Symbol a, Symbol b) { return a.name_ == b.name_; }
  friend std::strong_ordering operator<=>(Symbol a, Symbol b) {
    if (a.name_ == b.name_) return std::strong_ordering::equal;
    return a.name_->compare(*b.name_) < 0 ? std::strong_ordering::less
                                          : std::strong_ordering::greater;
  }

  std::size_t hash() const { return std::hash<const void*>{}(name_); }

 private:
  const std::string* name_;
};

class Multiset {
 public:
  using Entry = std::pair<Symbol, Count>;

  Multiset() = default;
  Multiset(std::initializer_list<Entry> entries);
  Multiset(std::initializer_list<Symbol> symbols);

  /// Accumulating builder; zero counts are ignored.
  void add(Symbol s, Count n = 1);

  Count count(Symbol s) const;
  Count size() const { return size_; }
  bool empty() const { return entries_.empty(); }
  /// Entries sorted by symbol name, counts all positive.
  const std::vector<Entry>& entries() const { return entries_; }

  friend bool operator==(const Multiset& a, const Multiset& b) { return a.entries_ == b.entries_; }
  friend std::strong_ordering operator<=>(const Multiset& a, const Multiset& b);

  std::size_t hash() const;

 private:
  std::vector<Entry> entries_;
  Count size_ = 0;

  friend Multiset msum(const Multiset&, const Multiset&);
  friend std::optional<Multiset> mdiff(const Multiset&, const Multiset&);
};

struct MultisetHash {
  std::size_t operator()(const Multiset& m) const { return m.hash(); }
};

Multiset msum(const Multiset& m1, const Multiset& m2);
/// m1 - m2, or nullopt when m2 is not contained in m1.
std::optional<Multiset> mdiff(const Multiset& m1, const Multiset& m2);
bool contains(const Multiset& m, const Multiset& sub);
/// Symbols with positive count, sorted by name.
std::vector<Symbol> support(const Multiset& m);
/// True iff every symbol of m is in `allowed` (sorted by name).
bool support_within(const Multiset& m, const std::vector<Symbol>& allowed);

/// All ordered pairs (s, w) with s + w = m, ordered by the canonical
/// rendering of s. There are prod(count_i + 1) of them.
std::vector<std::pair<Multiset, Multiset>> splits(const Multiset& m);

/// Canonical text: symbols sorted by name, `name` or `name^count`,
/// space separated; the empty multiset is ".".
std::string render(const Multiset& m);

/// Parses `.` or space-separated `name[^count]` tokens (repeats accumulate).
/// `allow_reserved` controls whether "@" names are accepted.
Multiset parse_multiset(std::string_view text, bool allow_reserved = true);

}  // namespace vesicle

template <>
struct std::hash<vesicle::Symbol> {
  std::size_t operator()(vesicle::Symbol s) const { return s.hash(); }
};
template <>
struct std::hash<vesicle::Multiset> {
  std::size_t operator()(const vesicle::Multiset& m) const { return m.hash(); }
};
