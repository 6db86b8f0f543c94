#pragma once

#include <string>
#include <vector>

#include "consep/interval.hpp"

namespace consep {

// Three-valued outcome of a certified comparison. "indeterminate" means the
// enclosures overlap at the working precision; it is never a claim about the
// true values.
enum class Verdict { holds, fails, indeterminate };

const char* to_string(Verdict v);

// Combine link verdicts: any fails -> fails, else any indeterminate ->
// indeterminate, else holds.
Verdict combine(Verdict a, Verdict b);

// Record of one certified inequality check "lhs REL rhs". margin is a lower
// bound on how far the inequality holds (lo(lhs)-up(rhs) for >=-claims); it is
// negative or meaningless unless verdict == holds.
struct InequalityReport {
  std::string claim;
  Interval lhs;
  Interval rhs;
  Verdict verdict;
  Real margin;
};

// Certified lhs >= rhs.
InequalityReport check_ge(const std::string& claim, const Interval& lhs,
                          const Interval& rhs);
// Certified lhs <= rhs.
InequalityReport check_le(const std::string& claim, const Interval& lhs,
                          const Interval& rhs);
// Enclosure consistency: the two routes must intersect (an exact identity was
// evaluated along both). Disjoint enclosures certify a bug, never rounding.
InequalityReport check_identity(const std::string& claim, const Interval& lhs,
                                const Interval& rhs);

struct ChainReport {
  std::vector<InequalityReport> links;
  Verdict overall = Verdict::indeterminate;

  void add(InequalityReport r);
};

}  // namespace consep
