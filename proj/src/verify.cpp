#include "vesicle/verify.hpp"

#include <chrono>
#include <future>
#include <sstream>

namespace vesicle {

std::optional<Registers> parikh(const Multiset& m, std::size_t k) {
  Registers out(k, 0);
  for (const auto& [s, n] : m.entries()) {
    bool found = false;
    for (std::size_t i = 1; i <= k && !found; ++i) {
      if (s.name() == "a" + std::to_string(i)) {
        out[i - 1] = n;
        found = true;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

namespace {

struct Explored {
  ResultSet results;
  bool pruned = false;
};

Explored explore(const AnySystem& sys, const VerifyOptions& opts) {
  if (const auto* tts = std::get_if<TestTubeSystem>(&sys)) {
    const TTSState st = closure(*tts, opts.bounds);
    return {results(*tts, st), st.pruned};
  }
  const TPRun run = tp_run(std::get<TissueSystem>(sys), opts.max_steps, opts.bounds);
  return {run.results, run.pruned};
}

bool within(const Registers& v, std::size_t bound) {
  for (Count c : v)
    if (c > bound) return false;
  return true;
}

}  // namespace

VerifyReport verify(const RegisterMachine& m, const std::string& machine_id,
                    const VerifyOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  VerifyReport r;
  r.machine_id = machine_id;
  r.construction = opts.compile.construction;
  r.fidelity = opts.compile.fidelity;
  r.bound = opts.bound;
  r.bounds = opts.bounds;
  r.max_steps = opts.max_steps;

  const AnySystem sys = compile(m, opts.compile);
  auto oracle = std::async(std::launch::async, [&] { return enumerate(m, opts.bound, opts.fuel); });
  const Explored explored = explore(sys, opts);
  r.oracle = oracle.get();
  r.pruned = explored.pruned;
  for (const auto& res : explored.results)
    if (auto v = parikh(res, m.inputs); v && within(*v, opts.bound)) r.system.insert(*v);

  if (opts.compile.construction == Construction::Cor2 ||
      opts.compile.construction == Construction::Cor3)
    r.excluded.insert(Registers(m.inputs, 0));
  for (const auto& v : r.oracle)
    if (!r.system.count(v) && !r.excluded.count(v)) r.missing.insert(v);
  for (const auto& v : r.system)
    if (!r.oracle.count(v) && !r.excluded.count(v)) r.unexpected.insert(v);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string render_vector(const Registers& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

namespace {

std::string render_set(const std::set<Registers>& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& v : s) {
    out += (first ? "" : " ") + render_vector(v);
    first = false;
  }
  return out + "}";
}

}  // namespace

std::string render(const VerifyReport& r) {
  std::ostringstream os;
  os << "machine: " << r.machine_id << "\n";
  os << "construction: " << to_string(r.construction) << " (" << to_string(r.fidelity) << ")\n";
  os << "bound: " << r.bound << "\n";
  os << "engine bounds: max-size " << r.bounds.max_vesicle_size << ", max-pop "
     << r.bounds.max_population << ", max-iter " << r.bounds.max_iterations;
  if (r.construction == Construction::Thm4) os << ", max-steps " << r.max_steps;
  os << (r.bounds.keep_empty ? "" : ", no-keep-empty") << "\n";
  os << "oracle: " << render_set(r.oracle) << "\n";
  os << "system: " << render_set(r.system) << "\n";
  if (!r.excluded.empty()) os << "excluded: " << render_set(r.excluded) << "\n";
  os << "pruned: " << (r.pruned ? "true" : "false") << "\n";
  if (r.match()) {
    os << "verdict: match\n";
  } else {
    os << "verdict: mismatch\n";
    if (!r.missing.empty()) os << "  oracle only: " << render_set(r.missing) << "\n";
    if (!r.unexpected.empty()) os << "  system only: " << render_set(r.unexpected) << "\n";
  }
  return os.str();
}

}  // namespace vesicle
