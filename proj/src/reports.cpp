#include "consep/reports.hpp"

namespace consep {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    default:
      return "indeterminate";
  }
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fails || b == Verdict::fails) return Verdict::fails;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate)
    return Verdict::indeterminate;
  return Verdict::holds;
}

namespace {

// margin = lo(lhs) - up(rhs), rounded down, so a positive margin is itself a
// certified statement.
Real ge_margin(const Interval& lhs, const Interval& rhs) {
  mpfr_prec_t p = std::max(lhs.lo().prec(), rhs.hi().prec());
  return r_sub(lhs.lo(), rhs.hi(), p, MPFR_RNDD);
}

}  // namespace

InequalityReport check_ge(const std::string& claim, const Interval& lhs,
                          const Interval& rhs) {
  Verdict v = Verdict::indeterminate;
  if (lhs.lo().cmp(rhs.hi()) >= 0) {
    v = Verdict::holds;
  } else if (lhs.hi().cmp(rhs.lo()) < 0) {
    v = Verdict::fails;
  }
  return InequalityReport{claim, lhs, rhs, v, ge_margin(lhs, rhs)};
}

InequalityReport check_le(const std::string& claim, const Interval& lhs,
                          const Interval& rhs) {
  InequalityReport r = check_ge(claim, rhs, lhs);
  return InequalityReport{claim, lhs, rhs, r.verdict, r.margin};
}

InequalityReport check_identity(const std::string& claim, const Interval& lhs,
                                const Interval& rhs) {
  Verdict v = lhs.intersects(rhs) ? Verdict::holds : Verdict::fails;
  // For an identity the "margin" records the worst-case gap between the
  // enclosures (negative overlap depth when they intersect).
  mpfr_prec_t p = std::max(lhs.lo().prec(), rhs.hi().prec());
  Real gap1 = r_sub(lhs.lo(), rhs.hi(), p, MPFR_RNDU);
  Real gap2 = r_sub(rhs.lo(), lhs.hi(), p, MPFR_RNDU);
  return InequalityReport{claim, lhs, rhs, v, r_max(gap1, gap2)};
}

void ChainReport::add(InequalityReport r) {
  overall = links.empty() ? r.verdict : combine(overall, r.verdict);
  links.push_back(std::move(r));
}

}  // namespace consep
