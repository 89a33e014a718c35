#include "vesicle/multiset.hpp"

#include <algorithm>
#include <charconv>
#include <mutex>
#include <unordered_set>

namespace vesicle {

namespace {

class Interner {
 public:
  const std::string* intern(std::string_view name) {
    std::lock_guard lock(mutex_);
    auto it = names_.find(std::string(name));
    if (it == names_.end()) it = names_.emplace(name).first;
    return &*it;
  }

 private:
  std::mutex mutex_;
  // Node-based: element addresses are stable across rehashing.
  std::unordered_set<std::string> names_;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

bool forbidden_char(char c) {
  switch (c) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
    case '{': case '}': case ';': case ',': case '|':
    case '^': case '(': case ')':
      return true;
    default:
      return false;
  }
}

}  // namespace

bool Symbol::valid_name(std::string_view name) {
  if (name.empty() || name == ".") return false;
  return std::none_of(name.begin(), name.end(), forbidden_char);
}

Symbol::Symbol(std::string_view name) {
  if (!valid_name(name)) throw ParseError("invalid symbol name '" + std::string(name) + "'");
  name_ = interner().intern(name);
}

Symbol Symbol::user(std::string_view name) {
  if (is_reserved(name))
    throw ParseError("symbol '" + std::string(name) + "' uses the reserved '@' prefix");
  return Symbol(name);
}

Multiset::Multiset(std::initializer_list<Entry> entries) {
  for (const auto& [s, n] : entries) add(s, n);
}

Multiset::Multiset(std::initializer_list<Symbol> symbols) {
  for (Symbol s : symbols) add(s);
}

void Multiset::add(Symbol s, Count n) {
  if (n == 0) return;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const Entry& e, Symbol key) { return e.first < key; });
  if (it != entries_.end() && it->first == s)
    it->second += n;
  else
    entries_.insert(it, {s, n});
  size_ += n;
}

Count Multiset::count(Symbol s) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                             [](const Entry& e, Symbol key) { return e.first < key; });
  return it != entries_.end() && it->first == s ? it->second : 0;
}

std::strong_ordering operator<=>(const Multiset& a, const Multiset& b) {
  const auto& x = a.entries_;
  const auto& y = b.entries_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].first <=> y[i].first; c != 0) return c;
    if (auto c = x[i].second <=> y[i].second; c != 0) return c;
  }
  return x.size() <=> y.size();
}

std::size_t Multiset::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& [s, n] : entries_) {
    h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<Count>{}(n) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Multiset msum(const Multiset& m1, const Multiset& m2) {
  Multiset out;
  out.entries_.reserve(m1.entries_.size() + m2.entries_.size());
  auto i = m1.entries_.begin();
  auto j = m2.entries_.begin();
  while (i != m1.entries_.end() || j != m2.entries_.end()) {
    if (j == m2.entries_.end() || (i != m1.entries_.end() && i->first < j->first)) {
      out.entries_.push_back(*i++);
    } else if (i == m1.entries_.end() || j->first < i->first) {
      out.entries_.push_back(*j++);
    } else {
      out.entries_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.size_ = m1.size_ + m2.size_;
  return out;
}

std::optional<Multiset> mdiff(const Multiset& m1, const Multiset& m2) {
  Multiset out;
  out.entries_.reserve(m1.entries_.size());
  auto j = m2.entries_.begin();
  for (const auto& [s, n] : m1.entries_) {
    if (j != m2.entries_.end() && j->first < s) return std::nullopt;
    if (j != m2.entries_.end() && j->first == s) {
      if (j->second > n) return std::nullopt;
      if (j->second < n) out.entries_.emplace_back(s, n - j->second);
      ++j;
    } else {
      out.entries_.emplace_back(s, n);
    }
  }
  if (j != m2.entries_.end()) return std::nullopt;
  out.size_ = m1.size_ - m2.size_;
  return out;
}

bool contains(const Multiset& m, const Multiset& sub) {
  if (sub.size() > m.size()) return false;
  const auto& big = m.entries();
  auto i = big.begin();
  for (const auto& [s, n] : sub.entries()) {
    while (i != big.end() && i->first < s) ++i;
    if (i == big.end() || !(i->first == s) || i->second < n) return false;
  }
  return true;
}

std::vector<Symbol> support(const Multiset& m) {
  std::vector<Symbol> out;
  out.reserve(m.entries().size());
  for (const auto& e : m.entries()) out.push_back(e.first);
  return out;
}

bool support_within(const Multiset& m, const std::vector<Symbol>& allowed) {
  auto i = allowed.begin();
  for (const auto& e : m.entries()) {
    while (i != allowed.end() && *i < e.first) ++i;
    if (i == allowed.end() || !(*i == e.first)) return false;
  }
  return true;
}

std::vector<std::pair<Multiset, Multiset>> splits(const Multiset& m) {
  const auto& entries = m.entries();
  std::vector<Count> take(entries.size(), 0);
  std::vector<std::pair<Multiset, Multiset>> out;
  // Odometer over 0..count_i for each entry.
  for (;;) {
    Multiset first;
    Multiset second;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      first.add(entries[i].first, take[i]);
      second.add(entries[i].first, entries[i].second - take[i]);
    }
    out.emplace_back(std::move(first), std::move(second));
    std::size_t i = 0;
    while (i < entries.size() && take[i] == entries[i].second) take[i++] = 0;
    if (i == entries.size()) break;
    ++take[i];
  }
  std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
    if (p.first.size() != q.first.size()) return p.first.size() < q.first.size();
    return p.first < q.first;
  });
  return out;
}

std::string render(const Multiset& m) {
  if (m.empty()) return ".";
  std::string out;
  for (const auto& [s, n] : m.entries()) {
    if (!out.empty()) out += ' ';
    out += s.name();
    if (n != 1) {
      out += '^';
      out += std::to_string(n);
    }
  }
  return out;
}

Multiset parse_multiset(std::string_view text, bool allow_reserved) {
  Multiset out;
  std::size_t tokens = 0;
  bool saw_dot = false;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t') ++end;
    const std::string_view token = text.substr(pos, end - pos);
    pos = end;
    ++tokens;
    if (token == ".") {
      saw_dot = true;
      continue;
    }
    std::string_view name = token;
    Count n = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      name = token.substr(0, caret);
      const std::string_view digits = token.substr(caret + 1);
      if (digits.empty() || digits.front() == '-' || digits.front() == '+')
        throw ParseError("malformed count in token '" + std::string(token) + "'");
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ParseError("malformed count in token '" + std::string(token) + "'");
      if (n == 0) throw ParseError("zero count in token '" + std::string(token) + "'");
    }
    if (!Symbol::valid_name(name)) throw ParseError("malformed token '" + std::string(token) + "'");
    out.add(allow_reserved ? Symbol(name) : Symbol::user(name), n);
  }
  if (tokens == 0) throw ParseError("empty multiset text (use '.')");
  if (saw_dot && tokens > 1) throw ParseError("'.' cannot be combined with symbols");
  return out;
}

}  // namespace vesicle
