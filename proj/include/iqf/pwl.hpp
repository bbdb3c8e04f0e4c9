#ifndef IQF_PWL_HPP
#define IQF_PWL_HPP

#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace iqf {

/// Module-wide absolute tolerance for "equals zero" decisions in slope
/// comparisons.  User-facing equality checks take an explicit tolerance.
inline constexpr double kDefaultTol = 1e-9;

/// Tolerance at which collinear vertices are merged and canonical forms
/// compare equal.
inline constexpr double kCanonicalTol = 1e-12;

inline double inf() { return std::numeric_limits<double>::infinity(); }

/// Scale-aware closeness: |a-b| <= tol * max(1, |a|, |b|).
bool near(double a, double b, double tol);

/// Closed interval [lo, hi].  Also used for subdifferentials and for the
/// open balayage intervals (a, b) of the exit-chain construction, where
/// openness is a property of the operation, not of the stored endpoints.
struct Interval {
    double lo;
    double hi;

    Interval(double lo_, double hi_);
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Convex piecewise-linear function with explicit breakpoints and values.
///
/// The function is finite on its effective domain and +infinity outside.
/// Each side is either unbounded (finite asymptotic slope) or cut at the
/// first/last breakpoint (the function jumps to +infinity immediately
/// beyond it).  Infinite values are never stored; the cut flags are the
/// only infinity encoding.
///
/// Collinear vertices are merged on construction, so two equal functions
/// have identical vertex structure up to kCanonicalTol.  Instances are
/// immutable and safe to share between threads.
class ConvexPWL {
  public:
    /// Builds the function from vertices and tail slopes.
    ///
    /// `slope_left`/`slope_right` are ignored on a cut side.  If a finite
    /// domain end lies strictly beyond the first/last breakpoint, the
    /// boundary vertex is materialized and the side becomes cut.
    ConvexPWL(std::vector<double> breakpoints, std::vector<double> values,
              double slope_left, double slope_right,
              std::optional<Interval> domain = std::nullopt);

    static ConvexPWL linear(double slope, double value_at_zero = 0.0);
    static ConvexPWL abs_value();

    const std::vector<double>& breakpoints() const { return xs_; }
    const std::vector<double>& values() const { return ys_; }
    std::size_t size() const { return xs_.size(); }

    bool left_cut() const { return left_cut_; }
    bool right_cut() const { return right_cut_; }
    /// Asymptotic slope; calling it on a cut side is a logic error.
    double slope_left() const;
    double slope_right() const;

    double domain_lo() const { return left_cut_ ? xs_.front() : -inf(); }
    double domain_hi() const { return right_cut_ ? xs_.back() : inf(); }

    /// Chord slope between breakpoints i and i+1.
    double chord(std::size_t i) const;

    /// f(x); +infinity outside the effective domain.
    double evaluate(double x) const;
    double operator()(double x) const { return evaluate(x); }

    /// [f'_-(x), f'_+(x)]; x must lie in the interior of the domain.
    Interval subdifferential(double x) const;

    /// Minimum of f over [lo, hi] (both must be inside the domain).
    double min_on(double lo, double hi) const;

    /// Returns f shifted by a constant: f + c.
    ConvexPWL shifted(double c) const;

    /// Function equality: same domain, same tails, same values at the
    /// union of breakpoints, everything within tol.
    bool approx_equal(const ConvexPWL& other, double tol = kCanonicalTol) const;

  private:
    std::vector<double> xs_;
    std::vector<double> ys_;
    double slope_left_ = 0.0;
    double slope_right_ = 0.0;
    bool left_cut_ = false;
    bool right_cut_ = false;

    void canonicalize();
    void validate() const;
};

/// Canonical-form comparison: identical vertex lists, tails and cut flags,
/// coordinates within tol.  Stricter than ConvexPWL::approx_equal.
bool vertexwise_equal(const ConvexPWL& f, const ConvexPWL& g,
                      double tol = kCanonicalTol);

/// Exact Fenchel transform f*(u) = sup_x (xu - f(x)).
///
/// For a PWL input the output is PWL: breakpoints and slopes swap roles.
/// On proper lower-semicontinuous convex PWL functions the transform is an
/// involution.
ConvexPWL fenchel_conjugate(const ConvexPWL& f);

/// Greatest convex minorant of the pointwise minimum of `fs` on `domain`,
/// computed as the lower convex hull of the union of graph vertices.
/// Every input must be finite on the domain.
ConvexPWL lower_convex_envelope(const std::vector<ConvexPWL>& fs,
                                const Interval& domain);

/// Solves x*v - f(x) = c for the two roots a < b.
///
/// Requires the concave map x -> x*v - f(x) to attain a maximum strictly
/// greater than c and to tend to -infinity on both sides.  A root falling
/// exactly on a breakpoint is returned as the breakpoint coordinate.
/// Throws std::domain_error when the maximum does not exceed c.
std::pair<double, double> solve_concave_equation(const ConvexPWL& f, double v,
                                                 double c);

/// Nondecreasing right-continuous piecewise-linear function with jumps:
/// at a node the function value is `right`, the left limit is `left`.
/// Linear interpolation between nodes, constant tails.
class MonotonePWL {
  public:
    struct Node {
        double x;
        double left;
        double right;
    };

    explicit MonotonePWL(std::vector<Node> nodes);

    const std::vector<Node>& nodes() const { return nodes_; }

    double value(double x) const;       // right-continuous value
    double left_limit(double x) const;  // value at x-0

    /// True when usable as a CDF descriptor: values in [0,1], tails 0 and 1.
    bool is_cdf(double tol = kDefaultTol) const;

  private:
    std::vector<Node> nodes_;
};

/// Levy distance between two CDF descriptors:
/// inf{eps > 0 : F(x-eps)-eps <= G(x) <= F(x+eps)+eps for all x}.
/// Exact: the 45-degree criterion reduces to finitely many vertex checks.
double levy_distance(const MonotonePWL& F, const MonotonePWL& G);

/// sup |f - g| over [on.lo, on.hi]; both functions must be finite there.
/// Exact: the supremum is attained at a vertex or an interval end.
double sup_distance(const ConvexPWL& f, const ConvexPWL& g,
                    const Interval& on);

}  // namespace iqf

#endif  // IQF_PWL_HPP
