#include "vesicle/rules.hpp"

#include <algorithm>

namespace vesicle {

Count weight(const MateRule& r) {
  return r.u.size() + r.a.size() + r.b.size() + r.v.size() + r.x.size();
}

Count weight(const DripRule& r) {
  return r.u.size() + r.c.size() + r.v.size() + r.y.size() + r.z.size();
}

Count weight(const Rule& r) {
  return std::visit([](const auto& rule) { return weight(rule); }, r);
}

std::optional<Vesicle> apply_mate(const MateRule& r, const Vesicle& v1, const Vesicle& v2) {
  if (!contains(v1, msum(r.u, r.a)) || !contains(v2, msum(r.b, r.v))) return std::nullopt;
  return msum(msum(*mdiff(v1, r.a), r.x), *mdiff(v2, r.b));
}

std::vector<std::pair<Vesicle, Vesicle>> apply_drip(const DripRule& r, const Vesicle& ves) {
  std::vector<std::pair<Vesicle, Vesicle>> out;
  auto residual = mdiff(ves, msum(msum(r.u, r.c), r.v));
  if (!residual) return out;
  const Multiset first_fixed = msum(r.u, r.y);
  const Multiset second_fixed = msum(r.z, r.v);
  for (const auto& [s, w] : splits(*residual))
    out.emplace_back(msum(s, first_fixed), msum(second_fixed, w));
  // Distinct splits give distinct first components, but keep the contract explicit.
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::pair<Vesicle, Vesicle>> apply_drip1(const DripRule& r, const Vesicle& ves) {
  auto rest = mdiff(ves, msum(r.c, r.v));
  if (!rest || !contains(*rest, r.u)) return std::nullopt;
  return std::pair{msum(*rest, r.y), msum(r.v, r.z)};
}

RestrictionProfile classify(const MateRule& r) {
  return {.singleton_contacts = r.a.size() == 1 && r.b.size() == 1,
          .empty_right_contact = r.b.empty(),
          .nonempty_context = !r.v.empty() && !(r.u.empty() && r.x.empty())};
}

RestrictionProfile classify(const DripRule& r) {
  return {.singleton_contacts = r.c.size() == 1,
          .empty_right_contact = r.z.empty(),
          .nonempty_context = !r.v.empty() && !r.u.empty()};
}

RestrictionProfile classify(const Rule& r) {
  return std::visit([](const auto& rule) { return classify(rule); }, r);
}

Multiset left_requirement(const Rule& r) {
  if (const auto* m = std::get_if<MateRule>(&r)) return msum(m->u, m->a);
  const auto& d = std::get<DripRule>(r);
  return msum(msum(d.u, d.c), d.v);
}

Multiset right_requirement(const MateRule& r) { return msum(r.b, r.v); }

std::string render(const Rule& r) {
  if (const auto* m = std::get_if<MateRule>(&r)) {
    return "MATE (" + render(m->u) + " | " + render(m->a) + " , " + render(m->b) + " | " +
           render(m->v) + " ; " + render(m->x) + ")";
  }
  const auto& d = std::get<DripRule>(r);
  return std::string(d.mode == DripMode::OneSided ? "DRIP1" : "DRIP") + " (" + render(d.u) +
         " | " + render(d.c) + " | " + render(d.v) + " ; " + render(d.y) + " , " + render(d.z) +
         ")";
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

Multiset slot(std::string_view text, bool allow_reserved) {
  // An empty slot is λ as well as the explicit ".".
  if (text.empty()) return {};
  return parse_multiset(text, allow_reserved);
}

}  // namespace

Rule parse_rule(std::string_view text, bool allow_reserved) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    throw ParseError("rule must have the form KIND (...): '" + std::string(text) + "'");
  const std::string_view kind = trim(text.substr(0, open));
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  const auto bars = split_on(body, '|');
  if (bars.size() != 3)
    throw ParseError("rule body needs exactly two '|' separators: '" + std::string(text) + "'");
  const auto tail = split_on(bars[2], ';');
  if (tail.size() != 2)
    throw ParseError("rule body needs exactly one ';': '" + std::string(text) + "'");

  if (kind == "MATE") {
    const auto contact = split_on(bars[1], ',');
    if (contact.size() != 2 || tail[1].find(',') != std::string_view::npos)
      throw ParseError("MATE needs the form (U | A , B | V ; X): '" + std::string(text) + "'");
    return MateRule{slot(bars[0], allow_reserved), slot(contact[0], allow_reserved),
                    slot(contact[1], allow_reserved), slot(tail[0], allow_reserved),
                    slot(tail[1], allow_reserved)};
  }
  if (kind == "DRIP" || kind == "DRIP1") {
    const auto products = split_on(tail[1], ',');
    if (products.size() != 2 || bars[1].find(',') != std::string_view::npos)
      throw ParseError("DRIP needs the form (U | C | V ; Y , Z): '" + std::string(text) + "'");
    return DripRule{slot(bars[0], allow_reserved),   slot(bars[1], allow_reserved),
                    slot(tail[0], allow_reserved),   slot(products[0], allow_reserved),
                    slot(products[1], allow_reserved),
                    kind == "DRIP1" ? DripMode::OneSided : DripMode::TwoSided};
  }
  throw ParseError("unknown rule kind '" + std::string(kind) + "'");
}

std::vector<Symbol> symbols_of(const Rule& r) {
  std::vector<Symbol> out;
  auto take = [&out](const Multiset& m) {
    for (const auto& e : m.entries()) out.push_back(e.first);
  };
  if (const auto* m = std::get_if<MateRule>(&r)) {
    for (const Multiset* part : {&m->u, &m->a, &m->b, &m->v, &m->x}) take(*part);
  } else {
    const auto& d = std::get<DripRule>(r);
    for (const Multiset* part : {&d.u, &d.c, &d.v, &d.y, &d.z}) take(*part);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace vesicle
