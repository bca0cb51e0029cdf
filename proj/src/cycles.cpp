#include "detequiv/cycles.hpp"

#include <algorithm>

namespace detequiv {

namespace {

CaseLabel label_from_products(const Scalar& kf, const Scalar& kr, const Scalar& qf,
                              const Scalar& qr) {
  const bool case1 = kf == qf && kr == qr;
  const bool case2 = kf == qr && kr == qf;
  if (case1 && case2) return CaseLabel::Both;
  if (case1) return CaseLabel::Case1Only;
  if (case2) return CaseLabel::Case2Only;
  return CaseLabel::Neither;
}

bool is_zero_edge(const Kernel& k, std::size_t a, std::size_t b, GlobalCase framework) {
  return framework == GlobalCase::Case1 ? k(a, b).is_zero() : k(b, a).is_zero();
}

}  // namespace

CaseLabel classify_3cycle(const Kernel& k, const Kernel& q, const Cycle& p) {
  require_same_domain(k, q);
  if (p.size() != 3) throw PreconditionError("classify_3cycle needs a 3-cycle");
  return label_from_products(cycle_product(k, p), reversed_cycle_product(k, p),
                             cycle_product(q, p), reversed_cycle_product(q, p));
}

EdgeType zero_edge_type(const Kernel& k, const Kernel& q, const Cycle& p,
                        std::pair<std::size_t, std::size_t> edge, GlobalCase framework) {
  require_same_domain(k, q);
  auto edges = p.edges();
  if (std::find(edges.begin(), edges.end(), edge) == edges.end()) {
    throw PreconditionError("edge does not belong to the cycle");
  }
  return is_zero_edge(k, edge.first, edge.second, framework) ? EdgeType::ZeroEdge
                                                             : EdgeType::NonzeroEdge;
}

CaseLabel CaseTable::label_of(const Cycle& p) const { return entry_for(p).label; }

const CaseEntry& CaseTable::entry_for(const Cycle& p) const {
  if (p.size() != 3) throw PreconditionError("case table only holds 3-cycles");
  const Cycle key = p[1] < p[2] ? p : p.reversed();
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const CaseEntry& e, const Cycle& c) { return e.cycle < c; });
  if (it == entries_.end() || it->cycle != key) {
    throw IndexOutOfRange("3-cycle not present in case table");
  }
  return *it;
}

const CaseEntry* CaseTable::first_neither() const {
  for (const auto& e : entries_) {
    if (e.label == CaseLabel::Neither) return &e;
  }
  return nullptr;
}

CaseTable build_case_table(const Kernel& k, const Kernel& q) {
  require_same_domain(k, q);
  std::vector<CaseEntry> entries;
  if (k.size() < 3) return CaseTable(std::move(entries));
  for (const auto& p : enumerate_3cycles(k.size())) {
    if (p[1] > p[2]) continue;
    CaseEntry e{p,
                CaseLabel::Neither,
                cycle_product(k, p),
                reversed_cycle_product(k, p),
                cycle_product(q, p),
                reversed_cycle_product(q, p),
                {}};
    e.label = label_from_products(e.k_forward, e.k_reversed, e.q_forward, e.q_reversed);
    const auto framework = e.label == CaseLabel::Case2Only ? GlobalCase::Case2 : GlobalCase::Case1;
    for (auto edge : p.edges()) {
      if (is_zero_edge(k, edge.first, edge.second, framework)) e.zero_edges.push_back(edge);
    }
    entries.push_back(std::move(e));
  }
  return CaseTable(std::move(entries));
}

MixedCases::MixedCases(Cycle case1_cycle, Cycle case2_cycle)
    : Error("3-cycles fall into different Cases"),
      case1_cycle(std::move(case1_cycle)),
      case2_cycle(std::move(case2_cycle)) {}

GlobalCase global_case(const CaseTable& table) {
  const CaseEntry* case1 = nullptr;
  const CaseEntry* case2 = nullptr;
  for (const auto& e : table.entries()) {
    switch (e.label) {
      case CaseLabel::Neither:
        throw PreconditionError("case table contains a Neither cycle");
      case CaseLabel::Case1Only:
        if (!case1) case1 = &e;
        break;
      case CaseLabel::Case2Only:
        if (!case2) case2 = &e;
        break;
      case CaseLabel::Both:
        break;
    }
  }
  if (case1 && case2) throw MixedCases(case1->cycle, case2->cycle);
  return case2 ? GlobalCase::Case2 : GlobalCase::Case1;
}

std::vector<std::array<std::size_t, 4>> four_point_audit(const Kernel& k, const Kernel& q) {
  require_same_domain(k, q);
  if (k.size() < 4) throw PreconditionError("four_point_audit needs at least four points");
  const auto table = build_case_table(k, q);
  if (table.first_neither() != nullptr) {
    throw PreconditionError("four_point_audit needs a table without Neither cycles");
  }
  std::vector<std::array<std::size_t, 4>> out;
  for (const auto& s : subsets_of_size(k.size(), 4)) {
    bool any1 = false;
    bool any2 = false;
    for (const auto& t : subsets_of_size(4, 3)) {
      const auto label = table.label_of(Cycle({s[t[0]], s[t[1]], s[t[2]]}));
      any1 = any1 || label == CaseLabel::Case1Only;
      any2 = any2 || label == CaseLabel::Case2Only;
    }
    if (any1 && any2) out.push_back({s[0], s[1], s[2], s[3]});
  }
  return out;
}

const char* to_string(CaseLabel label) {
  switch (label) {
    case CaseLabel::Case1Only: return "case1_only";
    case CaseLabel::Case2Only: return "case2_only";
    case CaseLabel::Both: return "both";
    case CaseLabel::Neither: return "neither";
  }
  return "unknown";
}

const char* to_string(GlobalCase c) { return c == GlobalCase::Case1 ? "case1" : "case2"; }

}  // namespace detequiv
