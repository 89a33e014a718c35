#include "vesicle/system_io.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

#include "text_util.hpp"

namespace vesicle {

namespace {

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError("expected an index, got '" + std::string(token) + "'", line);
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Text after the first `n` whitespace-separated fields.
std::string_view rest_after(std::string_view line, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
  }
  return trim(line.substr(pos));
}

std::string_view unbrace(std::string_view s, std::size_t line) {
  s = trim(s);
  if (!s.empty() && s.front() == '{') {
    if (s.back() != '}') throw ParseError("unbalanced braces in '" + std::string(s) + "'", line);
    return trim(s.substr(1, s.size() - 2));
  }
  return s;
}

std::vector<Symbol> parse_symbols(const std::vector<std::string>& tokens, std::size_t from,
                                  std::size_t line) {
  std::vector<Symbol> out;
  for (std::size_t i = from; i < tokens.size(); ++i) {
    try {
      out.emplace_back(tokens[i]);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line);
    }
  }
  return out;
}

std::string join(const std::vector<Symbol>& symbols) {
  std::string out;
  for (Symbol s : symbols) {
    out += ' ';
    out += s.name();
  }
  return out;
}

std::string brace_symbols(const std::vector<Symbol>& symbols) {
  std::string out = "{";
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ' ';
    out += symbols[i].name();
  }
  return out + "}";
}

template <typename Fn>
auto with_line(std::size_t line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError& e) {
    if (e.line()) throw;
    throw ParseError(e.what(), line);
  }
}

struct Header {
  std::optional<std::vector<Symbol>> alphabet;
  std::optional<std::vector<Symbol>> terminal;
  std::optional<std::size_t> units;
  std::optional<std::vector<std::size_t>> outputs;
};

}  // namespace

AnySystem parse_system(std::string_view text) {
  const auto lines = detail::split_lines(text);
  enum class Kind { Unknown, TTS, TP } kind = Kind::Unknown;
  Header header;
  TestTubeSystem tts(0);
  TissueSystem tp(0);

  auto require_units = [&](std::size_t line) {
    if (!header.units) throw ParseError("TUBES/CELLS must precede AXIOM and RULE lines", line);
    return *header.units;
  };
  auto unit_index = [&](const std::string& token, std::size_t line) {
    const std::size_t i = parse_index(token, line);
    if (i < 1 || i > require_units(line))
      throw ParseError("index " + token + " out of range", line);
    return i;
  };

  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t lineno = n + 1;
    const std::string body = detail::strip_comment(lines[n]);
    const auto tokens = detail::tokenize(body);
    if (tokens.empty()) continue;
    const std::string& head = tokens[0];

    if (kind == Kind::Unknown) {
      if (head != "SYSTEM" || tokens.size() != 2 || (tokens[1] != "TTS" && tokens[1] != "TP"))
        throw ParseError("file must start with 'SYSTEM TTS' or 'SYSTEM TP'", lineno);
      kind = tokens[1] == "TTS" ? Kind::TTS : Kind::TP;
      continue;
    }
    if (head == "ALPHABET") {
      header.alphabet = parse_symbols(tokens, 1, lineno);
    } else if (head == "TERMINAL") {
      header.terminal = parse_symbols(tokens, 1, lineno);
    } else if ((head == "TUBES" && kind == Kind::TTS) || (head == "CELLS" && kind == Kind::TP)) {
      if (tokens.size() != 2 || header.units)
        throw ParseError("expected a single " + head + " line", lineno);
      const std::size_t units = parse_index(tokens[1], lineno);
      if (units == 0) throw ParseError(head + " must be positive", lineno);
      header.units = units;
      tts = TestTubeSystem(units);
      tp = TissueSystem(units);
    } else if (head == "OUTPUT") {
      if (tokens.size() < 2 || (kind == Kind::TP && tokens.size() != 2))
        throw ParseError("malformed OUTPUT line", lineno);
      std::vector<std::size_t> outs;
      for (std::size_t i = 1; i < tokens.size(); ++i) outs.push_back(parse_index(tokens[i], lineno));
      header.outputs = outs;
    } else if (head == "AXIOM") {
      if (tokens.size() < 3) throw ParseError("malformed AXIOM line", lineno);
      const std::size_t i = unit_index(tokens[1], lineno);
      Multiset ax = with_line(lineno, [&] { return parse_multiset(unbrace(rest_after(body, 2), lineno)); });
      (kind == Kind::TTS ? tts.axioms : tp.axioms)[i - 1].push_back(std::move(ax));
    } else if (head == "RULE") {
      if (tokens.size() < 3) throw ParseError("malformed RULE line", lineno);
      const std::size_t i = unit_index(tokens[1], lineno);
      std::string_view rule_text = rest_after(body, 2);
      if (kind == Kind::TTS) {
        tts.rules[i - 1].push_back(with_line(lineno, [&] { return parse_rule(rule_text); }));
      } else {
        const auto close = rule_text.rfind(')');
        const auto arrow = rule_text.find("->", close == std::string_view::npos ? 0 : close);
        if (close == std::string_view::npos || arrow == std::string_view::npos)
          throw ParseError("TP rule needs '-> target'", lineno);
        const std::string target(trim(rule_text.substr(arrow + 2)));
        const std::size_t j = unit_index(target, lineno);
        Rule r = with_line(lineno, [&] { return parse_rule(rule_text.substr(0, close + 1)); });
        tp.rules.push_back({i, std::move(r), j});
      }
    } else if (head == "FILTER" && kind == Kind::TTS) {
      if (tokens.size() < 6 || tokens[2] != "->" || tokens[4] != "SUPPORT")
        throw ParseError("expected 'FILTER i -> j SUPPORT {symbols}'", lineno);
      const std::size_t from = unit_index(tokens[1], lineno);
      const std::size_t to = unit_index(tokens[3], lineno);
      const std::string inner(unbrace(rest_after(body, 5), lineno));
      SupportFilter branch(parse_symbols(detail::tokenize(inner), 0, lineno));
      auto it = std::find_if(tts.filters.begin(), tts.filters.end(),
                             [&](const FilterEdge& e) { return e.from == from && e.to == to; });
      if (it == tts.filters.end())
        tts.filters.push_back({from, to, Filter{{std::move(branch)}}});
      else
        it->filter.branches.push_back(std::move(branch));
    } else {
      throw ParseError("unknown directive '" + head + "'", lineno);
    }
  }

  if (kind == Kind::Unknown) throw ParseError("empty system file");
  if (!header.units) throw ParseError(kind == Kind::TTS ? "missing TUBES line" : "missing CELLS line");
  if (!header.outputs) throw ParseError("missing OUTPUT line");
  if (kind == Kind::TTS) {
    tts.alphabet = header.alphabet.value_or(std::vector<Symbol>{});
    tts.terminal = header.terminal.value_or(std::vector<Symbol>{});
    tts.outputs = *header.outputs;
    return tts;
  }
  tp.alphabet = header.alphabet.value_or(std::vector<Symbol>{});
  tp.terminal = header.terminal.value_or(std::vector<Symbol>{});
  tp.output = header.outputs->front();
  return tp;
}

std::string render(const TestTubeSystem& tts) {
  std::ostringstream os;
  os << "SYSTEM TTS\n";
  os << "ALPHABET" << join(tts.alphabet) << "\n";
  os << "TERMINAL" << join(tts.terminal) << "\n";
  os << "TUBES " << tts.tubes << "\n";
  os << "OUTPUT";
  for (std::size_t o : tts.outputs) os << ' ' << o;
  os << "\n";
  for (std::size_t t = 0; t < tts.axioms.size(); ++t)
    for (const auto& ax : tts.axioms[t]) os << "AXIOM " << t + 1 << " {" << render(ax) << "}\n";
  for (std::size_t t = 0; t < tts.rules.size(); ++t)
    for (const auto& r : tts.rules[t]) os << "RULE " << t + 1 << ' ' << render(r) << "\n";
  for (const auto& e : tts.filters)
    for (const auto& b : e.filter.branches)
      os << "FILTER " << e.from << " -> " << e.to << " SUPPORT " << brace_symbols(b.allowed) << "\n";
  return os.str();
}

std::string render(const TissueSystem& sys) {
  std::ostringstream os;
  os << "SYSTEM TP\n";
  os << "ALPHABET" << join(sys.alphabet) << "\n";
  os << "TERMINAL" << join(sys.terminal) << "\n";
  os << "CELLS " << sys.cells << "\n";
  os << "OUTPUT " << sys.output << "\n";
  for (std::size_t c = 0; c < sys.axioms.size(); ++c)
    for (const auto& ax : sys.axioms[c]) os << "AXIOM " << c + 1 << " {" << render(ax) << "}\n";
  for (const auto& r : sys.rules)
    os << "RULE " << r.source << ' ' << render(r.rule) << " -> " << r.target << "\n";
  return os.str();
}

std::string render(const AnySystem& sys) {
  return std::visit([](const auto& s) { return render(s); }, sys);
}

}  // namespace vesicle
