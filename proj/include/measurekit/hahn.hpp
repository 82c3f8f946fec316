#pragma once

#include <vector>

#include "measurekit/charge.hpp"

namespace measurekit {

// Geometric tolerance schedule ε_k = eps0 * ratio^k for k = 1..terms.
struct EpsSchedule {
  Rat eps0;
  Rat ratio;
  int terms = 0;

  // Validates eps0 > 0, ratio in (0,1), terms >= 1.
  static EpsSchedule make(Rat eps0, Rat ratio, int terms);

  Rat eps(int k) const;   // ε_k, 1 <= k <= terms
  Rat tail(int m) const;  // Σ_{k=m..terms} ε_k
};

struct HahnCertificate {
  // Mass of the charge's positive part inside x_minus.
  Rat pos_defect;
  // Mass of the charge's negative part inside x_plus.
  Rat neg_defect;

  bool valid() const { return pos_defect == 0 && neg_defect == 0; }
};

struct HahnDecomposition {
  SetValue x_minus;
  SetValue x_plus;  // complement of x_minus
  HahnCertificate certificate;
  Rat beta;         // family infimum the construction ran against
  bool stabilized;  // result unchanged when the schedule loses its last term
};

// E_1..E_K: for each k, the smallest-index family member whose charge lies
// strictly below β + ε_k. Always exists since the family attains β.
std::vector<SetValue> near_inf_sets(const Charge& charge,
                                    const GeneratingFamily& family,
                                    const EpsSchedule& sched);

struct XMinusResult {
  SetValue x_minus;
  // Whether the set is unchanged when the list is truncated by one term.
  // Always false for a single-term list (nothing to compare against).
  bool stabilized;
};

// ⋃_{m=1..m_max} ⋂_{k=m..K} E_k for a K-term list.
XMinusResult build_X_minus(const std::vector<SetValue>& e_sets, int m_max);

// The partial intersections X_m = ⋂_{k=m..K} E_k for m = 1..m_max.
std::vector<SetValue> x_minus_chain(const std::vector<SetValue>& e_sets,
                                    int m_max);

// Full pipeline: near-infimum sets, then the truncated union-of-intersections
// with m_max = K, then the defect certificate.
HahnDecomposition construct_hahn(const Charge& charge,
                                 const GeneratingFamily& family,
                                 const EpsSchedule& sched);

// Independent oracle: the strictly-negative atoms/cells of the charge.
SetValue exact_negative_set(const Charge& charge);

// Defect certificate for a candidate negative set: positive-part mass inside
// it and negative-part mass outside it. Both zero iff the split is a valid
// Hahn decomposition.
HahnCertificate hahn_certificate(const Charge& charge, const SetValue& x_minus);
HahnCertificate verify_hahn(const Charge& charge, const HahnDecomposition& d);

}  // namespace measurekit
