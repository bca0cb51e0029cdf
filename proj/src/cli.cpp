#include "detequiv/cli.hpp"

#include <functional>
#include <map>

#include "detequiv/io.hpp"

namespace detequiv::cli {

namespace {

struct Pair {
  Kernel k;
  Kernel q;
};

bool is_bundle(const Json& doc) { return doc.is_object() && doc.contains("k") && doc.contains("q"); }

Kernel load_kernel(const Command& cmd) {
  if (!cmd.k) throw PreconditionError("--k is required");
  const auto doc = read_json_file(*cmd.k);
  return kernel_from_json(is_bundle(doc) ? doc.at("k") : doc);
}

Pair load_pair(const Command& cmd) {
  if (!cmd.k) throw PreconditionError("--k is required");
  const auto doc = read_json_file(*cmd.k);
  if (!cmd.q) {
    if (!is_bundle(doc)) throw PreconditionError("--q is required unless --k is an instance bundle");
    return {kernel_from_json(doc.at("k")), kernel_from_json(doc.at("q"))};
  }
  Kernel k = kernel_from_json(is_bundle(doc) ? doc.at("k") : doc);
  const auto qdoc = read_json_file(*cmd.q);
  Kernel q = kernel_from_json(is_bundle(qdoc) ? qdoc.at("q") : qdoc);
  require_same_domain(k, q);
  return {std::move(k), std::move(q)};
}

std::string join_labels(const Kernel& k, const std::vector<std::size_t>& indices) {
  std::string out = "{";
  for (std::size_t i = 0; i < indices.size(); ++i) out += (i ? ", " : "") + k.label(indices[i]);
  return out + "}";
}

void emit(const Command& cmd, const Json& report, std::ostream& summary) {
  if (cmd.out) {
    write_json_file(*cmd.out, report);
  } else {
    summary << report.dump(2) << '\n';
  }
}

int check_equiv(const Command& cmd, std::ostream& summary) {
  auto [k, q] = load_pair(cmd);
  const auto report = check_equivalence(k, q, cmd.max_order);
  summary << "points            " << k.size() << '\n'
          << "orders checked    1.." << report.checked_order_max
          << (report.capped ? " (capped)" : "") << '\n';
  if (report.witness) {
    summary << "verdict           not equivalent\n"
            << "witness subset    " << join_labels(k, report.witness->subset) << '\n'
            << "minor of K        " << report.witness->minor_k.to_string() << '\n'
            << "minor of Q        " << report.witness->minor_q.to_string() << '\n';
  } else {
    summary << "verdict           equivalent\n";
  }
  emit(cmd, equivalence_report_to_json(report, k), summary);
  return report.verdict == Verdict::Equivalent ? kPositive : kNegative;
}

int check_classd(const Command& cmd, std::ostream& summary) {
  const Kernel h = load_kernel(cmd);
  const auto report = check_class_d(h);
  summary << "points            " << h.size() << '\n';
  if (report.witness) {
    const auto& w = *report.witness;
    summary << "verdict           not class D\n"
            << "witness (x,y,z,w) (" << h.label(w.x) << ", " << h.label(w.y) << ", "
            << h.label(w.z) << ", " << h.label(w.w) << ")\n"
            << "vanishing minor   " << w.minor.to_string() << '\n';
  } else {
    summary << "verdict           class D" << (report.vacuous ? " (vacuous, fewer than 4 points)" : "")
            << '\n';
  }
  emit(cmd, class_d_report_to_json(report, h), summary);
  return report.holds ? kPositive : kNegative;
}

int classify(const Command& cmd, std::ostream& summary) {
  auto [k, q] = load_pair(cmd);
  const auto table = build_case_table(k, q);
  std::map<std::string, std::size_t> counts;
  for (const auto& e : table.entries()) ++counts[to_string(e.label)];
  summary << "3-cycles          " << table.entries().size() << '\n';
  for (const auto& [label, count] : counts) {
    summary << "  " << label << std::string(16 - label.size(), ' ') << count << '\n';
  }
  emit(cmd, case_table_to_json(table, k), summary);
  return kPositive;
}

int recover_cmd(const Command& cmd, std::ostream& summary) {
  auto [k, q] = load_pair(cmd);
  RecoveryOptions options{cmd.max_order, cmd.audit_consistency};
  try {
    const auto result = recover(k, q, options);
    summary << "verdict           recovered\n"
            << "transposed        " << (result.transposed ? "true" : "false") << '\n'
            << "global case       " << to_string(result.global_case) << '\n'
            << "base              " << result.base_label << '\n'
            << "entries verified  " << result.verification.entries_checked << '\n';
    for (std::size_t i = 0; i < k.size(); ++i) {
      summary << "  g(" << k.label(i) << ") = " << result.gauge[i].to_string() << '\n';
    }
    emit(cmd, certificate_to_json(result, k), summary);
    return kPositive;
  } catch (const NotEquivalent& e) {
    EquivalenceReport report{Verdict::NotEquivalent, k.size(), false, e.witness, {}};
    summary << "verdict           not equivalent\n"
            << "witness subset    " << join_labels(k, e.witness.subset) << '\n';
    emit(cmd, equivalence_report_to_json(report, k), summary);
    return kNegative;
  } catch (const ClassDViolation& e) {
    const Kernel& h = e.which == 'k' ? k : q;
    ClassDReport report{false, false, e.witness};
    Json doc{{"verdict", "not_class_d"}, {"kernel", std::string(1, e.which)}};
    doc["class_d"] = class_d_report_to_json(report, h);
    summary << "verdict           kernel " << e.which << " is not class D\n";
    emit(cmd, doc, summary);
    return kNegative;
  } catch (const NotRecoverable& e) {
    summary << "verdict           not recoverable\n";
    emit(cmd, Json{{"verdict", "not_recoverable"}}, summary);
    return kNegative;
  }
}

int gen(const Command& cmd, std::ostream& summary) {
  InstanceSpec spec;
  spec.field = cmd.field;
  spec.n = cmd.n;
  spec.transpose = cmd.transpose;
  spec.zero_edges = cmd.zeros;
  spec.seed = cmd.seed;
  const auto instance = gen_instance(spec);
  summary << "field             " << cmd.field.to_string() << '\n'
          << "points            " << cmd.n << '\n'
          << "transposed        " << (cmd.transpose ? "true" : "false") << '\n'
          << "zero pairs        " << cmd.zeros << '\n'
          << "seed              " << cmd.seed << '\n';
  emit(cmd, instance_to_json(instance), summary);
  return kPositive;
}

int perturb_cmd(const Command& cmd, std::ostream& summary) {
  auto [k, q] = load_pair(cmd);
  const Kernel changed = perturb(k, q, cmd.seed);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (!(changed(i, j) == q(i, j))) {
        summary << "changed entry     (" << q.label(i) << ", " << q.label(j) << ") "
                << q(i, j).to_string() << " -> " << changed(i, j).to_string() << '\n';
      }
    }
  emit(cmd, kernel_to_json(changed), summary);
  return kPositive;
}

int oracle_cmd(const Command& cmd, std::ostream& summary) {
  auto [k, q] = load_pair(cmd);
  const auto truth = brute_force_diagonal_similar(k, q);
  Json doc{{"similar", truth.has_value()}};
  if (truth) {
    doc["transposed"] = truth->transposed;
    doc["gauge"] = gauge_to_json(truth->gauge, k);
    summary << "verdict           diagonally similar"
            << (truth->transposed ? " after transposition" : "") << '\n';
  } else {
    summary << "verdict           not diagonally similar\n";
  }
  emit(cmd, doc, summary);
  return truth ? kPositive : kNegative;
}

int search(const Command& cmd, std::ostream& summary) {
  const auto witnesses = search_counterexample(cmd.field, cmd.n, cmd.budget, cmd.seed);
  Json list = Json::array();
  for (const auto& w : witnesses) {
    list.push_back(Json{{"k", kernel_to_json(w.k)},
                        {"q", kernel_to_json(w.q)},
                        {"k_class_d", class_d_report_to_json(w.k_class_d, w.k)},
                        {"q_class_d", class_d_report_to_json(w.q_class_d, w.q)}});
  }
  summary << "field             " << cmd.field.to_string() << '\n'
          << "points            " << cmd.n << '\n'
          << "samples           " << cmd.budget << '\n'
          << "witnesses         " << witnesses.size() << '\n';
  emit(cmd,
       Json{{"field", field_to_json(cmd.field)},
            {"n", cmd.n},
            {"budget", cmd.budget},
            {"seed", cmd.seed},
            {"witnesses", std::move(list)}},
       summary);
  return kPositive;
}

}  // namespace

int run(const Command& cmd, std::ostream& summary, std::ostream& diagnostics) {
  static const std::map<std::string, std::function<int(const Command&, std::ostream&)>> table{
      {"check-equiv", check_equiv}, {"check-classd", check_classd}, {"classify", classify},
      {"recover", recover_cmd},     {"gen", gen},                   {"perturb", perturb_cmd},
      {"oracle", oracle_cmd},       {"search", search},
  };
  const auto it = table.find(cmd.subcommand);
  if (it == table.end()) {
    diagnostics << "error: unknown subcommand \"" << cmd.subcommand << "\"\n";
    return kInputError;
  }
  try {
    return it->second(cmd, summary);
  } catch (const VerificationFailed& e) {
    diagnostics << "internal verification failure: " << e.what() << '\n';
    return kInternalFailure;
  } catch (const MixedCases& e) {
    diagnostics << "internal verification failure: " << e.what() << '\n';
    return kInternalFailure;
  } catch (const BranchUnavailable& e) {
    diagnostics << "internal verification failure: " << e.what() << '\n';
    return kInternalFailure;
  } catch (const Inconsistent& e) {
    diagnostics << "internal verification failure: " << e.what() << '\n';
    return kInternalFailure;
  } catch (const Error& e) {
    diagnostics << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    diagnostics << "internal error: " << e.what() << '\n';
    return kInternalFailure;
  }
}

}  // namespace detequiv::cli
