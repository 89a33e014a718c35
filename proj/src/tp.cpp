#include "vesicle/tp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace vesicle {

TissueSystem::TissueSystem(std::size_t n) : cells(n), axioms(n) {}

std::vector<Violation> validate_tp(const TissueSystem& sys) {
  std::vector<Violation> out;
  std::vector<Symbol> alphabet = sys.alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  auto check_symbols = [&](const std::string& where, const std::vector<Symbol>& symbols) {
    for (Symbol s : symbols)
      if (!std::binary_search(alphabet.begin(), alphabet.end(), s))
        out.push_back({where, "symbol '" + s.name() + "' is not in the alphabet", false});
  };
  auto in_range = [&sys](std::size_t c) { return c >= 1 && c <= sys.cells; };

  if (sys.cells == 0) out.push_back({"CELLS", "a system needs at least one cell", false});
  if (sys.axioms.size() != sys.cells)
    out.push_back({"CELLS", "per-cell axiom table does not match the cell count", false});
  check_symbols("TERMINAL", sys.terminal);
  if (!in_range(sys.output))
    out.push_back({"OUTPUT", "cell " + std::to_string(sys.output) + " out of range", false});
  for (std::size_t c = 0; c < sys.axioms.size(); ++c)
    for (const auto& ax : sys.axioms[c])
      check_symbols("AXIOM " + std::to_string(c + 1) + " {" + render(ax) + "}", support(ax));
  for (const auto& r : sys.rules) {
    const std::string where = "RULE " + std::to_string(r.source) + " " + render(r.rule) + " -> " +
                              std::to_string(r.target);
    if (!in_range(r.source) || !in_range(r.target))
      out.push_back({where, "cell index out of range", false});
    else if (r.source == r.target)
      out.push_back({where, "source and target cell coincide", true});
    check_symbols(where, symbols_of(r.rule));
  }
  return out;
}

std::size_t TPState::population() const {
  return std::accumulate(contents.begin(), contents.end(), std::size_t{0},
                         [](std::size_t n, const auto& cell) { return n + cell.size(); });
}

namespace {

void canonicalize(std::vector<Vesicle>& cell) {
  std::sort(cell.begin(), cell.end());
  cell.erase(std::unique(cell.begin(), cell.end()), cell.end());
}

void log_results(const TissueSystem& sys, TPState& st) {
  std::vector<Symbol> terminal = sys.terminal;
  std::sort(terminal.begin(), terminal.end());
  for (const auto& v : st.contents[sys.output - 1])
    if (support_within(v, terminal)) st.result_log.insert(v);
}

}  // namespace

TPState tp_initial(const TissueSystem& sys) {
  const auto violations = validate_tp(sys);
  if (!ok(violations)) throw std::invalid_argument(describe(violations.front()));
  TPState st;
  st.contents = sys.axioms;
  for (auto& cell : st.contents) canonicalize(cell);
  log_results(sys, st);
  return st;
}

TPState tp_step(const TissueSystem& sys, const TPState& state, const ExplorationBounds& bounds) {
  bounds.validate();
  TPState next;
  next.step = state.step + 1;
  next.result_log = state.result_log;
  next.pruned = state.pruned;
  next.contents.resize(sys.cells);

  std::vector<std::vector<bool>> affected(sys.cells);
  for (std::size_t c = 0; c < sys.cells; ++c) affected[c].assign(state.contents[c].size(), false);

  auto deliver = [&](std::size_t target, Vesicle v) {
    if (v.size() > bounds.max_vesicle_size) {
      next.pruned = true;
      return;
    }
    if (v.empty() && !bounds.keep_empty) return;
    next.contents[target - 1].push_back(std::move(v));
  };

  for (const auto& tr : sys.rules) {
    const auto& items = state.contents[tr.source - 1];
    auto& used = affected[tr.source - 1];
    const Multiset left = left_requirement(tr.rule);
    std::vector<std::size_t> left_hits;
    for (std::size_t i = 0; i < items.size(); ++i)
      if (contains(items[i], left)) left_hits.push_back(i);
    if (left_hits.empty()) continue;

    if (const auto* mate = std::get_if<MateRule>(&tr.rule)) {
      const Multiset right = right_requirement(*mate);
      std::vector<std::size_t> right_hits;
      for (std::size_t i = 0; i < items.size(); ++i)
        if (contains(items[i], right)) right_hits.push_back(i);
      for (std::size_t l : left_hits) {
        for (std::size_t r : right_hits) {
          // Requirements are checked, so the mate always applies here.
          auto out = apply_mate(*mate, items[l], items[r]);
          used[l] = true;
          used[r] = true;
          deliver(tr.target, std::move(*out));
        }
      }
    } else {
      const auto& drip = std::get<DripRule>(tr.rule);
      for (std::size_t i : left_hits) {
        used[i] = true;
        if (drip.mode == DripMode::OneSided) {
          auto out = apply_drip1(drip, items[i]);
          deliver(tr.target, std::move(out->first));
          deliver(tr.target, std::move(out->second));
        } else {
          for (auto& [p, q] : apply_drip(drip, items[i])) {
            deliver(tr.target, std::move(p));
            deliver(tr.target, std::move(q));
          }
        }
      }
    }
  }

  for (std::size_t c = 0; c < sys.cells; ++c) {
    for (std::size_t i = 0; i < state.contents[c].size(); ++i)
      if (!affected[c][i]) next.contents[c].push_back(state.contents[c][i]);
    canonicalize(next.contents[c]);
  }
  if (next.population() > bounds.max_population) next.pruned = true;
  log_results(sys, next);
  return next;
}

TPRun tp_run(const TissueSystem& sys, std::size_t max_steps, const ExplorationBounds& bounds,
             const std::function<void(const TPState&)>& observe) {
  bounds.validate();
  TPRun out;
  TPState st = tp_initial(sys);
  auto record = [&](const TPState& s) {
    std::vector<std::size_t> sizes;
    for (const auto& cell : s.contents) sizes.push_back(cell.size());
    out.population.push_back(std::move(sizes));
    if (observe) observe(s);
  };
  record(st);
  for (std::size_t t = 0; t < max_steps; ++t) {
    if (st.population() > bounds.max_population) break;
    st = tp_step(sys, st, bounds);
    record(st);
  }
  out.results = st.result_log;
  out.pruned = st.pruned;
  out.final = std::move(st);
  return out;
}

}  // namespace vesicle
