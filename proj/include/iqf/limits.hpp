#ifndef IQF_LIMITS_HPP
#define IQF_LIMITS_HPP

#include <span>
#include <vector>

#include "iqf/dist.hpp"

namespace iqf {

/// Computable tightness / uniform-integrability functionals of a finite
/// family.  Boundedness across growing families is the caller's criterion;
/// the fields themselves are exact.
struct FamilyDiagnostics {
    double oscillation;   // sup over the family of |Q(u) - Q(v)|
    double modulus;       // max modulus of continuity of the IQFs at gap delta
    double sup_abs_mean;  // max over the family of max(E[X-], E[X+])
};

/// sup over the family of |Q(u) - Q(v)| for u, v in (0,1).
double tightness_oscillation(std::span<const AtomicDistribution> family,
                             double u, double v);

/// max over the family of sup{|Q(u2) - Q(u1)| : |u2 - u1| <= delta}.
/// For convex Q the supremum sits on the two endpoint windows [0, delta]
/// and [1 - delta, 1], so the value is exact.
double ui_modulus(std::span<const AtomicDistribution> family, double delta);

FamilyDiagnostics family_diagnostics(std::span<const AtomicDistribution> family,
                                     double u, double v, double delta);

/// The dominating-variable construction: the law D with
/// |X_a| <=_icx D for every member, whose shift-1 IQF is the lower convex
/// envelope of the members' shift-1 IQFs (members are folded to |X| first).
AtomicDistribution dominating_variable(std::span<const AtomicDistribution> family);

enum class ProfileShift { none, at0, at1 };

/// Per-element sup-distance between the (optionally shifted) IQFs of the
/// sequence members and of the target on [a, b].  The raw profile needs
/// 0 < a < b < 1; the shifted variants may touch the corresponding end.
std::vector<double> uniform_distance_profile(
    std::span<const AtomicDistribution> seq, const AtomicDistribution& target,
    double a, double b, ProfileShift shift = ProfileShift::none);

}  // namespace iqf

#endif  // IQF_LIMITS_HPP
