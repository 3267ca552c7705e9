#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "drk/cli/commands.hpp"
#include "drk/errors.hpp"

namespace {

enum ExitCode { kOk = 0, kInputError = 1, kInternalError = 2 };

}  // namespace

int main(int argc, char** argv) {
  using namespace drk::cli;

  CLI::App app{"drk: K-theory and stable finiteness for rank-2 Deaconu-Renault groupoids"};
  app.set_version_flag("--version", DRK_VERSION);
  app.require_subcommand(1, 1);

  CommandOptions opt;
  std::string format = "human";
  std::string input;
  std::vector<std::string> assume;
  std::size_t k_bound = 0;
  long bf_bound = opt.brute_force_bound;
  unsigned threads = 1;

  struct Entry {
    Command command;
    CLI::App* app;
  };
  std::vector<Entry> subs;
  auto add = [&](Command c, const std::string& help) {
    CLI::App* s = app.add_subcommand(to_string(c), help);
    s->add_option("input", input, "model file (JSON)")->required()->check(CLI::ExistingFile);
    s->add_option("--format", format, "output format")->check(CLI::IsMember({"human", "machine"}));
    subs.push_back({c, s});
    return s;
  };

  add(Command::K0, "K0 group via the split exact sequence");
  add(Command::Ideal, "morphism of exact sequences induced by the file's invariant_subset");
  auto* cm = add(Command::ConditionM, "decide the matrix condition (M) exactly");
  cm->add_flag("--brute-force", opt.brute_force, "cross-check with exhaustive search");
  cm->add_option("--bound", bf_bound, "brute-force coefficient bound")->check(CLI::Range(0L, 64L));
  cm->add_option("--threads", threads, "brute-force worker threads (0 = hardware)");
  auto* cb = add(Command::Coboundary, "coboundary subgroup H_G versus the matrix image (finite_map only)");
  auto* kb = cb->add_option("--k-bound", k_bound, "exponent bound (default: lcm of orbit lengths)");
  auto* vd = add(Command::Verdict, "stable-finiteness verdict");
  vd->add_option("--assume", assume, "hypothesis to assume (repeatable)")
      ->allow_extra_args(false)
      ->check(CLI::IsMember({"P", "ideal_sf", "quotient_sf"}));
  auto* inv = add(Command::Invariants, "enumerate invariant subsets");
  inv->add_option("--max-enum", opt.max_enum, "largest model size to enumerate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  Command command = Command::K0;
  for (const auto& e : subs)
    if (e.app->parsed()) command = e.command;
  if (kb->count()) opt.k_bound = k_bound;
  opt.brute_force_bound = bf_bound;
  opt.threads = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  for (const auto& a : assume) {
    if (a == "P") opt.assume_positivity = true;
    if (a == "ideal_sf") opt.assume_ideal_sf = true;
    if (a == "quotient_sf") opt.assume_quotient_sf = true;
  }

  try {
    const ModelDocument doc = load_model_document(input);
    const CommandOutput out = run_command(command, doc, opt);
    if (format == "machine")
      std::cout << render_machine(result_document(command, doc, opt, out));
    else
      std::cout << out.human;
    return kOk;
  } catch (const DocumentError& e) {
    std::cerr << "drk: " << input << ": " << e.what() << "\n";
    return kInputError;
  } catch (const drk::InputError& e) {
    std::cerr << "drk: " << e.what() << "\n";
    return kInputError;
  } catch (const drk::EnumerationCapExceeded& e) {
    std::cerr << "drk: limit exceeded: " << e.what() << "\n";
    return kInputError;
  } catch (const drk::InternalConsistencyError& e) {
    std::cerr << "drk: internal consistency failure: " << e.what() << "\n";
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "drk: internal error: " << e.what() << "\n";
    return kInternalError;
  }
}
