// vesicle: command-line front end for the engines, compilers and verifier.
//
// Exit codes: 0 success/match/accepted, 1 semantic failure (mismatch, not
// accepted), 2 usage, parse or validation error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "vesicle/compilers.hpp"
#include "vesicle/verify.hpp"

namespace {

using namespace vesicle;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RegisterMachine load_machine(const std::string& path) {
  try {
    return parse_machine(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

AnySystem load_system(const std::string& path) {
  try {
    return parse_system(slurp(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Registers parse_input(const std::string& text) {
  Registers out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != item.size() || item.front() == '-')
      throw UsageError("--input expects comma-separated non-negative integers, got '" + text + "'");
    out.push_back(v);
  }
  return out;
}

std::string csv(const Registers& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

struct BoundFlags {
  ExplorationBounds bounds;
  bool no_keep_empty = false;
  std::size_t max_steps = 60;

  void attach(CLI::App* cmd) {
    cmd->add_option("--max-size", bounds.max_vesicle_size, "largest vesicle kept")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-pop", bounds.max_population, "population limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iter", bounds.max_iterations, "closure rounds (test tube systems)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-steps", max_steps, "steps (tissue systems)");
    cmd->add_flag("--no-keep-empty", no_keep_empty, "discard empty vesicles");
  }
  ExplorationBounds get() const {
    ExplorationBounds b = bounds;
    b.keep_empty = !no_keep_empty;
    return b;
  }
};

void report_violations(const std::vector<Violation>& vs) {
  for (const auto& v : vs) std::cerr << describe(v) << "\n";
  if (!ok(vs)) throw UsageError("system does not validate");
}

int cmd_run(const std::string& path, const BoundFlags& flags) {
  const AnySystem sys = load_system(path);
  const ExplorationBounds bounds = flags.get();
  ResultSet res;
  bool pruned = false;
  if (const auto* tts = std::get_if<TestTubeSystem>(&sys)) {
    report_violations(validate_tts(*tts));
    const TTSState st = closure(*tts, bounds);
    res = results(*tts, st);
    pruned = st.pruned;
  } else {
    const auto& tp = std::get<TissueSystem>(sys);
    report_violations(validate_tp(tp));
    const TPRun run = tp_run(tp, flags.max_steps, bounds);
    res = run.results;
    pruned = run.pruned;
  }
  for (const auto& m : res) std::cout << render(m) << "\n";
  if (pruned) std::cerr << "PRUNED: exploration bounds were reached; results may be incomplete\n";
  return 0;
}

int cmd_metrics(const std::string& path) {
  const AnySystem sys = load_system(path);
  const SystemMetrics m = metrics(sys);
  std::cout << summary(m) << "\n";
  std::cout << "rules: mate " << m.mate_rules << ", drip " << m.drip_rules << ", drip1 "
            << m.drip1_rules << "\n";
  if (!m.tissue)
    std::cout << "filters: " << m.filter_branches << " support branches"
              << (m.support_filters ? "" : " (non-support filters present)") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mate/drip vesicle systems: run, compile from register machines, verify."};
  app.require_subcommand(1);

  // rm run / rm enum
  auto* rm = app.add_subcommand("rm", "register machine interpreter");
  rm->require_subcommand(1);
  std::string rm_file, input_text;
  std::size_t fuel = 10000, bound = 4;
  auto* rm_run = rm->add_subcommand("run", "run one input vector");
  rm_run->add_option("file", rm_file, "machine file")->required();
  rm_run->add_option("--input", input_text, "comma-separated register values")->required();
  rm_run->add_option("--fuel", fuel, "instruction budget");
  auto* rm_enum = rm->add_subcommand("enum", "accepted vectors in {0..bound}^k");
  rm_enum->add_option("file", rm_file, "machine file")->required();
  rm_enum->add_option("--bound", bound, "largest input value");
  rm_enum->add_option("--fuel", fuel, "instruction budget per vector");

  // compile
  std::string construction, out_file;
  bool faithful = false, no_normalize = false;
  auto* comp = app.add_subcommand("compile", "compile a register machine into a vesicle system");
  comp->add_option("construction", construction, "thm1 | cor2 | cor3 | thm4")->required();
  comp->add_option("file", rm_file, "machine file")->required();
  comp->add_flag("--faithful", faithful, "literal transcription (no loading guard)");
  comp->add_flag("--no-normalize", no_normalize, "do not add register-clearing code");
  comp->add_option("-o,--output", out_file, "output file (default stdout)");

  // metrics
  std::string sys_file;
  auto* met = app.add_subcommand("metrics", "descriptional complexity of a system file");
  met->add_option("file", sys_file, "system file")->required();

  // run
  BoundFlags run_flags;
  auto* run = app.add_subcommand("run", "explore a system file and print its results");
  run->add_option("file", sys_file, "system file")->required();
  run_flags.attach(run);

  // verify
  BoundFlags ver_flags;
  auto* ver = app.add_subcommand("verify", "compare compiled results with the interpreter");
  ver->add_option("construction", construction, "thm1 | cor2 | cor3 | thm4")->required();
  ver->add_option("file", rm_file, "machine file")->required();
  ver->add_option("--bound", bound, "largest input value compared");
  ver->add_option("--fuel", fuel, "interpreter budget per vector");
  ver->add_flag("--faithful", faithful, "literal transcription (no loading guard)");
  ver->add_flag("--no-normalize", no_normalize, "do not add register-clearing code");
  ver_flags.attach(ver);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    auto compile_options = [&] {
      CompileOptions o;
      o.construction = parse_construction(construction);
      o.fidelity = faithful ? Fidelity::Faithful : Fidelity::Guarded;
      o.auto_normalize = !no_normalize;
      return o;
    };

    if (*rm_run) {
      const RegisterMachine m = load_machine(rm_file);
      const Registers input = parse_input(input_text);
      if (input.size() != m.inputs)
        throw UsageError("machine expects " + std::to_string(m.inputs) + " inputs, got " +
                         std::to_string(input.size()));
      const RunResult r = vesicle::run(m, input, fuel);
      std::cout << describe(r) << "\n";
      return r.accepted() ? 0 : 1;
    }
    if (*rm_enum) {
      const RegisterMachine m = load_machine(rm_file);
      for (const auto& v : enumerate(m, bound, fuel)) std::cout << csv(v) << "\n";
      return 0;
    }
    if (*comp) {
      const CompileOptions opts = compile_options();
      const std::string text = render(compile(load_machine(rm_file), opts));
      if (out_file.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_file, std::ios::binary);
        if (!(out << text)) throw UsageError("cannot write '" + out_file + "'");
      }
      return 0;
    }
    if (*met) return cmd_metrics(sys_file);
    if (*run) return cmd_run(sys_file, run_flags);
    if (*ver) {
      VerifyOptions opts;
      opts.compile = compile_options();
      opts.bound = bound;
      opts.fuel = fuel;
      opts.bounds = ver_flags.get();
      opts.max_steps = ver_flags.max_steps;
      const RegisterMachine m = load_machine(rm_file);
      const VerifyReport r =
          verify(m, std::filesystem::path(rm_file).filename().string(), opts);
      std::cout << render(r);
      if (r.pruned) std::cerr << "PRUNED: exploration bounds were reached\n";
      return r.match() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CompileError& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
