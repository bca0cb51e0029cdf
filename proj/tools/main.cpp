#include <iostream>

#include "CLI11.hpp"

#include "detequiv/cli.hpp"

namespace cli = detequiv::cli;

int main(int argc, char** argv) {
  CLI::App app{"Determinantal equivalence of kernels: checks, classification and gauge recovery"};
  app.require_subcommand(1);

  cli::Command cmd;
  std::string field_text = "rational";

  struct Sub {
    const char* name;
    const char* help;
    bool pair;
    bool generates;
  };
  const Sub subs[] = {
      {"check-equiv", "Compare all principal minors of two kernels", true, false},
      {"check-classd", "Test the class D non-degeneracy condition", false, false},
      {"classify", "Classify every 3-cycle by its product pattern", true, false},
      {"recover", "Recover the transposition flag and gauge mapping K to Q", true, false},
      {"gen", "Generate an instance bundle with known ground truth", false, true},
      {"perturb", "Change one entry of Q so that a small minor differs", true, false},
      {"oracle", "Decide diagonal similarity by brute force", true, false},
      {"search", "Search for equivalent pairs that are not diagonally similar", false, true},
  };
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->callback([&cmd, name = s.name] { cmd.subcommand = name; });
    sub->add_option("--out", cmd.out, "Report file (standard output when omitted)");
    if (!s.generates) {
      sub->add_option("--k", cmd.k, "Kernel document or instance bundle")
          ->required()
          ->check(CLI::ExistingFile);
      if (s.pair) sub->add_option("--q", cmd.q, "Second kernel document")->check(CLI::ExistingFile);
    }
    const std::string name = s.name;
    if (name == "check-equiv" || name == "recover") {
      sub->add_option("--max-order", cmd.max_order, "Largest minor order to compare")
          ->check(CLI::PositiveNumber);
    }
    if (name == "recover") {
      sub->add_flag("--audit-consistency", cmd.audit_consistency,
                    "Check every third point for doubly-zero pairs");
    }
    if (s.generates || name == "perturb") sub->add_option("--seed", cmd.seed, "Random seed");
    if (s.generates) {
      sub->add_option("--field", field_text, "rational or prime:P");
      sub->add_option("--n", cmd.n, "Number of points")->check(CLI::PositiveNumber);
    }
    if (name == "gen") {
      sub->add_flag("--transpose", cmd.transpose, "Conjugate the transpose of K");
      sub->add_option("--zeros", cmd.zeros, "Number of zero pairs");
    }
    if (name == "search") sub->add_option("--budget", cmd.budget, "Number of sampled pairs");
  }

  try {
    app.parse(argc, argv);
    cmd.field = detequiv::FieldSpec::parse(field_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kInputError;
  } catch (const detequiv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kInputError;
  }
  return cli::run(cmd, std::cout, std::cerr);
}
