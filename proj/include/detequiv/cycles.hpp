#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "detequiv/kernel.hpp"

namespace detequiv {

/// Which of the two product relations a 3-cycle p satisfies:
///   Case 1: K[p] = Q[p] and K'[p] = Q'[p]
///   Case 2: K[p] = Q'[p] and K'[p] = Q[p]
enum class CaseLabel { Case1Only, Case2Only, Both, Neither };

enum class GlobalCase { Case1, Case2 };

enum class EdgeType { ZeroEdge, NonzeroEdge };

CaseLabel classify_3cycle(const Kernel& k, const Kernel& q, const Cycle& p);

/// In the Case-1 framework (x, y) is a zero-edge iff K(x, y) = 0; in the
/// Case-2 framework iff K(y, x) = 0. The edge must belong to p.
EdgeType zero_edge_type(const Kernel& k, const Kernel& q, const Cycle& p,
                        std::pair<std::size_t, std::size_t> edge, GlobalCase framework);

struct CaseEntry {
  Cycle cycle;
  CaseLabel label;
  Scalar k_forward;
  Scalar k_reversed;
  Scalar q_forward;
  Scalar q_reversed;
  /// Zero-edges under the framework matching the label (Case 2 for
  /// Case2Only, Case 1 otherwise).
  std::vector<std::pair<std::size_t, std::size_t>> zero_edges;
};

/// Classification of every 3-cycle. Only the increasing orientation
/// (a, b, c), a < b < c, of each triple is stored; reversal swaps K[p] with
/// K'[p] and Q[p] with Q'[p] and leaves the label unchanged.
class CaseTable {
 public:
  explicit CaseTable(std::vector<CaseEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<CaseEntry>& entries() const { return entries_; }

  /// Label of any 3-cycle, in either orientation.
  CaseLabel label_of(const Cycle& p) const;
  const CaseEntry& entry_for(const Cycle& p) const;

  /// First entry labelled Neither, if any.
  const CaseEntry* first_neither() const;

 private:
  std::vector<CaseEntry> entries_;
};

CaseTable build_case_table(const Kernel& k, const Kernel& q);

/// Some 3-cycle is Case1Only while another is Case2Only.
class MixedCases : public Error {
 public:
  MixedCases(Cycle case1_cycle, Cycle case2_cycle);
  Cycle case1_cycle;
  Cycle case2_cycle;
};

/// Case1 when every cycle is Case1Only or Both (including the all-Both tie),
/// Case2 when every cycle is Case2Only or Both. Throws PreconditionError on a
/// Neither entry and MixedCases otherwise.
GlobalCase global_case(const CaseTable& table);

/// 4-subsets whose 3-cycles admit no common Case.
std::vector<std::array<std::size_t, 4>> four_point_audit(const Kernel& k, const Kernel& q);

const char* to_string(CaseLabel label);
const char* to_string(GlobalCase c);

}  // namespace detequiv
