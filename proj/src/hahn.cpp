#include "measurekit/hahn.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace measurekit {
namespace {

// The charge's positive part (negative values clamped to zero) or, with
// negate = true, its negative part |min(value, 0)| as a nonnegative charge.
Charge signed_part(const Charge& charge, bool negative_part) {
  auto clamp = [negative_part](const Rat& v) -> Rat {
    if (negative_part) return v < 0 ? -v : Rat(0);
    return v > 0 ? v : Rat(0);
  };
  if (charge.kind() == ChargeKind::kAtoms) {
    std::vector<Rat> out;
    out.reserve(charge.weights().size());
    for (const auto& w : charge.weights()) out.push_back(clamp(w));
    return Charge::atoms(std::move(out));
  }
  std::vector<Rat> out;
  out.reserve(charge.values().size());
  for (const auto& v : charge.values()) out.push_back(clamp(v));
  return Charge::density(charge.level(), std::move(out));
}

}  // namespace

EpsSchedule EpsSchedule::make(Rat eps0, Rat ratio, int terms) {
  if (!(eps0 > 0)) throw input_error("eps0 must be positive");
  if (!(ratio > 0 && ratio < 1)) {
    throw input_error("eps ratio must lie strictly between 0 and 1");
  }
  if (terms < 1) throw input_error("schedule needs at least one term");
  return {std::move(eps0), std::move(ratio), terms};
}

Rat EpsSchedule::eps(int k) const {
  if (k < 1 || k > terms) {
    throw input_error("schedule term out of range: " + std::to_string(k));
  }
  Rat value = eps0;
  for (int i = 0; i < k; ++i) value *= ratio;
  return value;
}

Rat EpsSchedule::tail(int m) const {
  if (m < 1 || m > terms) {
    throw input_error("schedule tail start out of range: " + std::to_string(m));
  }
  // eps0 * (ratio^m + ... + ratio^K) = ε_m * (1 - ratio^(K-m+1)) / (1 - ratio),
  // summed directly to stay obvious.
  Rat total = 0;
  Rat value = eps(m);
  for (int k = m; k <= terms; ++k) {
    total += value;
    value *= ratio;
  }
  return total;
}

std::vector<SetValue> near_inf_sets(const Charge& charge,
                                    const GeneratingFamily& family,
                                    const EpsSchedule& sched) {
  FamilyEvaluator eval(family, family_masses(charge, family));
  const Rat beta = eval.minimum();
  std::vector<SetValue> sets;
  sets.reserve(static_cast<std::size_t>(sched.terms));
  for (int k = 1; k <= sched.terms; ++k) {
    sets.push_back(eval.first_below(beta + sched.eps(k)));
  }
  return sets;
}

std::vector<SetValue> x_minus_chain(const std::vector<SetValue>& e_sets,
                                    int m_max) {
  const int k_count = static_cast<int>(e_sets.size());
  if (k_count < 1) throw input_error("empty near-infimum list");
  if (m_max < 1 || m_max > k_count) {
    throw input_error("truncation depth must lie in [1, " +
                      std::to_string(k_count) + "]");
  }
  // Suffix intersections from the tail down: X_m = E_m ∩ X_{m+1}.
  std::vector<SetValue> chain(static_cast<std::size_t>(k_count), e_sets.back());
  for (int m = k_count - 1; m >= 1; --m) {
    chain[m - 1] = set_intersect(e_sets[m - 1], chain[m]);
  }
  chain.resize(static_cast<std::size_t>(m_max));
  return chain;
}

namespace {

SetValue union_of_chain(const std::vector<SetValue>& e_sets, int m_max) {
  std::vector<SetValue> chain = x_minus_chain(e_sets, m_max);
  SetValue out = chain.front();
  for (std::size_t m = 1; m < chain.size(); ++m) out = set_union(out, chain[m]);
  return out;
}

}  // namespace

XMinusResult build_X_minus(const std::vector<SetValue>& e_sets, int m_max) {
  SetValue x_minus = union_of_chain(e_sets, m_max);
  bool stabilized = false;
  if (e_sets.size() >= 2) {
    std::vector<SetValue> shorter(e_sets.begin(), e_sets.end() - 1);
    const int shorter_m = std::min<int>(m_max, static_cast<int>(shorter.size()));
    stabilized = union_of_chain(shorter, shorter_m) == x_minus;
  }
  return {std::move(x_minus), stabilized};
}

SetValue exact_negative_set(const Charge& charge) {
  if (charge.kind() == ChargeKind::kAtoms) {
    const auto& w = charge.weights();
    std::vector<char> mask(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) mask[i] = w[i] < 0;
    return SetValue(AtomSet::from_mask(std::move(mask)));
  }
  const auto& v = charge.values();
  std::vector<char> mask(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) mask[i] = v[i] < 0;
  return SetValue(IntervalUnionSet::from_cells(charge.level(), mask));
}

HahnCertificate hahn_certificate(const Charge& charge, const SetValue& x_minus) {
  const SetValue x_plus = set_complement(x_minus);
  Rat pos = charge_eval(signed_part(charge, /*negative_part=*/false), x_minus);
  Rat neg = charge_eval(signed_part(charge, /*negative_part=*/true), x_plus);
  return {std::move(pos), std::move(neg)};
}

HahnCertificate verify_hahn(const Charge& charge, const HahnDecomposition& d) {
  return hahn_certificate(charge, d.x_minus);
}

HahnDecomposition construct_hahn(const Charge& charge,
                                 const GeneratingFamily& family,
                                 const EpsSchedule& sched) {
  FamilyEvaluator eval(family, family_masses(charge, family));
  Rat beta = eval.minimum();
  std::vector<SetValue> e_sets;
  e_sets.reserve(static_cast<std::size_t>(sched.terms));
  for (int k = 1; k <= sched.terms; ++k) {
    e_sets.push_back(eval.first_below(beta + sched.eps(k)));
  }
  XMinusResult built = build_X_minus(e_sets, sched.terms);
  HahnDecomposition d{std::move(built.x_minus),
                      SetValue{},
                      HahnCertificate{},
                      std::move(beta),
                      built.stabilized};
  d.x_plus = set_complement(d.x_minus);
  d.certificate = hahn_certificate(charge, d.x_minus);
  return d;
}

}  // namespace measurekit
