#include "vesicle/tts.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace vesicle {

SupportFilter::SupportFilter(std::vector<Symbol> symbols) : allowed(std::move(symbols)) {
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
}

TestTubeSystem::TestTubeSystem(std::size_t n) : tubes(n), axioms(n), rules(n) {}

bool filter_pass(const SupportFilter& f, const Vesicle& v) { return support_within(v, f.allowed); }

bool filter_pass(const Filter& f, const Vesicle& v) {
  return std::any_of(f.branches.begin(), f.branches.end(),
                     [&v](const SupportFilter& b) { return filter_pass(b, v); });
}

std::vector<Violation> validate_tts(const TestTubeSystem& tts) {
  std::vector<Violation> out;
  auto error = [&out](std::string where, std::string what) {
    out.push_back({std::move(where), std::move(what), false});
  };
  std::vector<Symbol> alphabet = tts.alphabet;
  std::sort(alphabet.begin(), alphabet.end());
  auto in_alphabet = [&alphabet](Symbol s) {
    return std::binary_search(alphabet.begin(), alphabet.end(), s);
  };
  auto check_symbols = [&](const std::string& where, const std::vector<Symbol>& symbols) {
    for (Symbol s : symbols)
      if (!in_alphabet(s)) error(where, "symbol '" + s.name() + "' is not in the alphabet");
  };

  if (tts.tubes == 0) error("TUBES", "a system needs at least one tube");
  if (tts.axioms.size() != tts.tubes || tts.rules.size() != tts.tubes)
    error("TUBES", "per-tube axiom/rule tables do not match the tube count");
  check_symbols("TERMINAL", tts.terminal);
  if (tts.outputs.empty()) error("OUTPUT", "no output tube");
  for (std::size_t o : tts.outputs)
    if (o < 1 || o > tts.tubes) error("OUTPUT", "tube " + std::to_string(o) + " out of range");

  for (std::size_t t = 0; t < tts.axioms.size(); ++t)
    for (const auto& ax : tts.axioms[t])
      check_symbols("AXIOM " + std::to_string(t + 1) + " {" + render(ax) + "}", support(ax));
  for (std::size_t t = 0; t < tts.rules.size(); ++t)
    for (const auto& r : tts.rules[t])
      check_symbols("RULE " + std::to_string(t + 1) + " " + render(r), symbols_of(r));

  for (const auto& e : tts.filters) {
    const std::string where = "FILTER " + std::to_string(e.from) + " -> " + std::to_string(e.to);
    if (e.from < 1 || e.from > tts.tubes || e.to < 1 || e.to > tts.tubes)
      error(where, "tube index out of range");
    if (e.from == e.to) error(where, "a filter must connect two different tubes (i != j)");
    if (e.filter.branches.empty()) error(where, "filter has no branches");
    for (const auto& b : e.filter.branches) check_symbols(where, b.allowed);
  }
  return out;
}

std::size_t TTSState::population() const {
  return std::accumulate(contents.begin(), contents.end(), std::size_t{0},
                         [](std::size_t n, const auto& tube) { return n + tube.size(); });
}

namespace {

// Candidate lists for one rule in one tube: indices of vesicles satisfying
// the left (and, for mates, right) requirement, ascending. Right candidates
// are bucketed by vesicle size so pairs whose result is certain to exceed
// the size bound are never built.
struct RuleIndex {
  Multiset left;
  Multiset right;
  bool is_mate = false;
  // |result| = |v1| + |v2| - shrink for a mate.
  std::int64_t shrink = 0;
  std::vector<std::size_t> left_hits;
  std::vector<std::vector<std::size_t>> right_by_size;
};

struct Candidate {
  Vesicle vesicle;
  Derivation how;
};

class ClosureRun {
 public:
  ClosureRun(const TestTubeSystem& tts, const ExplorationBounds& bounds, bool record)
      : tts_(tts), bounds_(bounds), record_(record), index_(tts.tubes), lookup_(tts.tubes),
        frontier_(tts.tubes, 0) {
    state_.contents.resize(tts.tubes);
    if (record_) state_.derivations.resize(tts.tubes);
    for (std::size_t t = 0; t < tts.tubes; ++t) {
      for (const auto& r : tts.rules[t]) {
        RuleIndex ri;
        ri.left = left_requirement(r);
        if (const auto* m = std::get_if<MateRule>(&r)) {
          ri.is_mate = true;
          ri.right = right_requirement(*m);
          ri.shrink = static_cast<std::int64_t>(m->a.size() + m->b.size()) -
                      static_cast<std::int64_t>(m->x.size());
          ri.right_by_size.resize(bounds.max_vesicle_size + 2);
        }
        index_[t].push_back(std::move(ri));
      }
    }
  }

  // Size deepening: the fixpoint is computed for size limit 1, 2, ... up to
  // the bound, each stage starting from the previous contents. Small
  // vesicles are therefore always fully explored before large ones, so
  // loosening a bound never loses a result.
  TTSState run() {
    for (std::size_t t = 0; t < tts_.tubes; ++t) {
      std::vector<Candidate> seed;
      for (const auto& ax : tts_.axioms[t]) seed.push_back({ax, {}});
      // Axioms are kept regardless of size; they are part of the system.
      commit(t, seed);
    }
    for (limit_ = 1;; ++limit_) {
      std::fill(frontier_.begin(), frontier_.end(), 0);
      oversize_ = false;
      for (;;) {
        bool has_new = false;
        for (std::size_t t = 0; t < tts_.tubes; ++t)
          has_new = has_new || frontier_[t] < state_.contents[t].size();
        if (!has_new) break;
        if (state_.iterations == bounds_.max_iterations || population_capped_) {
          state_.pruned = true;
          return std::move(state_);
        }
        round();
        ++state_.iterations;
      }
      // Nothing was cut at this limit, so no larger limit can add anything.
      if (!oversize_ || limit_ >= bounds_.max_vesicle_size) break;
    }
    state_.fixpoint = true;
    state_.pruned = state_.pruned || oversize_;
    return std::move(state_);
  }

 private:
  void round() {
    std::vector<std::vector<Candidate>> pending(tts_.tubes);
    pending_seen_.assign(tts_.tubes, {});
    pending_total_ = 0;
    std::vector<std::size_t> begin = frontier_;
    for (std::size_t t = 0; t < tts_.tubes && !population_capped_; ++t) {
      const auto& items = state_.contents[t];
      const std::size_t fresh = begin[t];
      for (std::size_t ri = 0; ri < tts_.rules[t].size() && !population_capped_; ++ri) {
        const Rule& rule = tts_.rules[t][ri];
        const RuleIndex& idx = index_[t][ri];
        if (idx.is_mate) {
          const auto& mate = std::get<MateRule>(rule);
          const auto max_size = static_cast<std::int64_t>(limit_);
          for (std::size_t l : idx.left_hits) {
            // Old x old pairs were handled in earlier rounds.
            const std::size_t lo = l >= fresh ? 0 : fresh;
            const std::int64_t room =
                max_size + idx.shrink - static_cast<std::int64_t>(items[l].size());
            for (std::size_t sz = 0; sz < idx.right_by_size.size() && !population_capped_; ++sz) {
              const auto& bucket = idx.right_by_size[sz];
              auto it = std::lower_bound(bucket.begin(), bucket.end(), lo);
              if (it == bucket.end()) continue;
              if (static_cast<std::int64_t>(sz) > room) {
                oversize_ = true;  // every result from here on is oversize
                break;
              }
              for (; it != bucket.end() && !population_capped_; ++it) {
                if (auto out = apply_mate(mate, items[l], items[*it]))
                  offer(pending, t, std::move(*out), Derivation::Kind::Rule, ri, t + 1, {l, *it});
              }
            }
            if (population_capped_) break;
          }
        } else {
          const auto& drip = std::get<DripRule>(rule);
          auto first = std::lower_bound(idx.left_hits.begin(), idx.left_hits.end(), fresh);
          for (auto it = first; it != idx.left_hits.end() && !population_capped_; ++it) {
            if (drip.mode == DripMode::OneSided) {
              if (auto out = apply_drip1(drip, items[*it])) {
                offer(pending, t, std::move(out->first), Derivation::Kind::Rule, ri, t + 1, {*it});
                offer(pending, t, std::move(out->second), Derivation::Kind::Rule, ri, t + 1, {*it});
              }
            } else {
              for (auto& [p, q] : apply_drip(drip, items[*it])) {
                offer(pending, t, std::move(p), Derivation::Kind::Rule, ri, t + 1, {*it});
                offer(pending, t, std::move(q), Derivation::Kind::Rule, ri, t + 1, {*it});
              }
            }
          }
        }
      }
      for (const auto& edge : tts_.filters) {
        if (edge.from != t + 1) continue;
        for (std::size_t i = fresh; i < items.size() && !population_capped_; ++i)
          if (filter_pass(edge.filter, items[i]))
            offer(pending, edge.to - 1, items[i], Derivation::Kind::Filter, 0, t + 1, {i});
      }
    }
    for (std::size_t t = 0; t < tts_.tubes; ++t) {
      frontier_[t] = state_.contents[t].size();
      commit(t, pending[t]);
    }
  }

  // Queues v for tube `to` (0-based) unless it is known already. The first
  // derivation found is the one kept.
  void offer(std::vector<std::vector<Candidate>>& pending, std::size_t to, Vesicle v,
             Derivation::Kind kind, std::size_t rule, std::size_t from_tube,
             std::vector<std::size_t> parents) {
    if (v.size() > limit_) {
      oversize_ = true;
      return;
    }
    if (v.empty() && !bounds_.keep_empty) return;
    if (lookup_[to].count(v) || pending_seen_[to].count(v)) return;
    if (total_ + pending_total_ >= bounds_.max_population) {
      population_capped_ = true;
      state_.pruned = true;
      return;
    }
    pending_seen_[to].insert(v);
    ++pending_total_;
    Derivation how;
    if (record_) how = {kind, rule, from_tube, std::move(parents)};
    pending[to].push_back({std::move(v), std::move(how)});
  }

  // Appends the distinct new vesicles of `batch` to tube t in canonical order.
  void commit(std::size_t t, std::vector<Candidate>& batch) {
    std::stable_sort(batch.begin(), batch.end(),
                     [](const Candidate& a, const Candidate& b) { return a.vesicle < b.vesicle; });
    auto& items = state_.contents[t];
    for (std::size_t i = 0; i < batch.size(); ++i) {
      if (i > 0 && batch[i].vesicle == batch[i - 1].vesicle) continue;
      if (lookup_[t].count(batch[i].vesicle)) continue;
      const std::size_t at = items.size();
      lookup_[t].emplace(batch[i].vesicle, at);
      for (std::size_t ri = 0; ri < index_[t].size(); ++ri) {
        auto& idx = index_[t][ri];
        if (contains(batch[i].vesicle, idx.left)) idx.left_hits.push_back(at);
        if (idx.is_mate && contains(batch[i].vesicle, idx.right)) {
          const std::size_t sz = std::min<std::size_t>(batch[i].vesicle.size(),
                                                       idx.right_by_size.size() - 1);
          idx.right_by_size[sz].push_back(at);
        }
      }
      items.push_back(std::move(batch[i].vesicle));
      if (record_) state_.derivations[t].push_back(std::move(batch[i].how));
      ++total_;
    }
  }

  const TestTubeSystem& tts_;
  const ExplorationBounds& bounds_;
  bool record_;
  TTSState state_;
  std::vector<std::vector<RuleIndex>> index_;
  std::vector<std::unordered_map<Vesicle, std::size_t, MultisetHash>> lookup_;
  std::vector<std::size_t> frontier_;
  std::vector<std::unordered_set<Vesicle, MultisetHash>> pending_seen_;
  std::size_t pending_total_ = 0;
  std::size_t total_ = 0;
  std::size_t limit_ = 1;
  bool oversize_ = false;
  bool population_capped_ = false;
};

}  // namespace

TTSState closure(const TestTubeSystem& tts, const ExplorationBounds& bounds,
                 const ClosureOptions& options) {
  bounds.validate();
  const auto violations = validate_tts(tts);
  if (!ok(violations)) throw std::invalid_argument(describe(violations.front()));
  return ClosureRun(tts, bounds, options.record_derivations).run();
}

ResultSet results(const TestTubeSystem& tts, const TTSState& state) {
  std::vector<Symbol> terminal = tts.terminal;
  std::sort(terminal.begin(), terminal.end());
  ResultSet out;
  for (std::size_t o : tts.outputs)
    for (const auto& v : state.contents.at(o - 1))
      if (support_within(v, terminal)) out.insert(v);
  return out;
}

ResultSet results(const TestTubeSystem& tts, const ExplorationBounds& bounds) {
  return results(tts, closure(tts, bounds));
}

}  // namespace vesicle
