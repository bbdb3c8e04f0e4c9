#include "iqf/pwl.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace iqf {

bool near(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
        throw std::invalid_argument("Interval: need lo <= hi");
}

namespace {

// A vertex is a real kink only when the slope strictly increases across it
// by more than the canonical tolerance; ties and sub-tolerance dips merge.
bool slope_increases(double prev, double next) {
    return next - prev > kCanonicalTol * std::max({1.0, std::abs(prev), std::abs(next)});
}

}  // namespace

ConvexPWL::ConvexPWL(std::vector<double> breakpoints, std::vector<double> values,
                     double slope_left, double slope_right,
                     std::optional<Interval> domain)
    : xs_(std::move(breakpoints)),
      ys_(std::move(values)),
      slope_left_(slope_left),
      slope_right_(slope_right) {
    if (xs_.empty() || xs_.size() != ys_.size())
        throw std::invalid_argument("ConvexPWL: need matching non-empty breakpoints/values");
    for (std::size_t i = 0; i < xs_.size(); ++i) {
        if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i]))
            throw std::invalid_argument("ConvexPWL: non-finite vertex");
        if (i + 1 < xs_.size() && !(xs_[i] < xs_[i + 1]))
            throw std::invalid_argument("ConvexPWL: breakpoints must be strictly increasing");
    }
    if (domain) {
        if (domain->lo > xs_.front() || domain->hi < xs_.back())
            throw std::invalid_argument("ConvexPWL: breakpoints outside domain");
        if (std::isfinite(domain->lo)) {
            if (domain->lo < xs_.front()) {
                // materialize the boundary vertex
                if (!std::isfinite(slope_left_))
                    throw std::invalid_argument("ConvexPWL: finite domain edge needs a finite slope");
                xs_.insert(xs_.begin(), domain->lo);
                ys_.insert(ys_.begin(),
                           ys_.front() - slope_left_ * (xs_[1] - domain->lo));
            }
            left_cut_ = true;
        }
        if (std::isfinite(domain->hi)) {
            if (domain->hi > xs_.back()) {
                if (!std::isfinite(slope_right_))
                    throw std::invalid_argument("ConvexPWL: finite domain edge needs a finite slope");
                xs_.push_back(domain->hi);
                ys_.push_back(ys_.back() + slope_right_ * (domain->hi - xs_[xs_.size() - 2]));
            }
            right_cut_ = true;
        }
    }
    if (!left_cut_ && !std::isfinite(slope_left_))
        throw std::invalid_argument("ConvexPWL: non-finite left slope on unbounded side");
    if (!right_cut_ && !std::isfinite(slope_right_))
        throw std::invalid_argument("ConvexPWL: non-finite right slope on unbounded side");
    canonicalize();
    validate();
}

ConvexPWL ConvexPWL::linear(double slope, double value_at_zero) {
    return ConvexPWL({0.0}, {value_at_zero}, slope, slope);
}

ConvexPWL ConvexPWL::abs_value() {
    return ConvexPWL({0.0}, {0.0}, -1.0, 1.0);
}

double ConvexPWL::slope_left() const {
    if (left_cut_) throw std::logic_error("ConvexPWL: left side is cut");
    return slope_left_;
}

double ConvexPWL::slope_right() const {
    if (right_cut_) throw std::logic_error("ConvexPWL: right side is cut");
    return slope_right_;
}

double ConvexPWL::chord(std::size_t i) const {
    return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

void ConvexPWL::canonicalize() {
    const std::size_t n = xs_.size();
    if (n == 1) return;
    std::vector<double> xs, ys;
    xs.reserve(n);
    ys.reserve(n);
    // Slope entering vertex i; entering the first vertex it is the tail
    // slope unless the side is cut (then the vertex is a domain end and is
    // always kept).
    auto keep_first = [&] {
        if (left_cut_) return true;
        return slope_increases(slope_left_, chord(0));
    };
    auto keep_last = [&] {
        if (right_cut_) return true;
        return slope_increases(chord(n - 2), slope_right_);
    };
    for (std::size_t i = 0; i < n; ++i) {
        bool keep;
        if (i == 0)
            keep = keep_first();
        else if (i == n - 1)
            keep = keep_last();
        else
            keep = slope_increases(chord(i - 1), chord(i));
        if (keep) {
            xs.push_back(xs_[i]);
            ys.push_back(ys_[i]);
        }
    }
    if (xs.empty()) {  // fully linear: keep one anchor
        xs.push_back(xs_.front());
        ys.push_back(ys_.front());
    }
    xs_ = std::move(xs);
    ys_ = std::move(ys);
}

void ConvexPWL::validate() const {
    const std::size_t n = xs_.size();
    double prev = left_cut_ ? -inf() : slope_left_;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double s = chord(i);
        if (!(s >= prev) && !near(s, prev, kDefaultTol))
            throw std::invalid_argument("ConvexPWL: chord slopes must be nondecreasing");
        prev = std::max(prev, s);
    }
    if (!right_cut_) {
        if (!(slope_right_ >= prev) && !near(slope_right_, prev, kDefaultTol))
            throw std::invalid_argument("ConvexPWL: right slope below last chord");
    }
}

double ConvexPWL::evaluate(double x) const {
    if (x < xs_.front()) {
        if (left_cut_) return inf();
        return ys_.front() + slope_left_ * (x - xs_.front());
    }
    if (x > xs_.back()) {
        if (right_cut_) return inf();
        return ys_.back() + slope_right_ * (x - xs_.back());
    }
    const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i == 0) return ys_.front();
    if (x == xs_[i - 1]) return ys_[i - 1];
    return ys_[i - 1] + chord(i - 1) * (x - xs_[i - 1]);
}

Interval ConvexPWL::subdifferential(double x) const {
    if (x < domain_lo() || x > domain_hi() ||
        (left_cut_ && x == domain_lo()) || (right_cut_ && x == domain_hi()))
        throw std::domain_error("subdifferential: point outside domain interior");
    const std::size_t n = xs_.size();
    if (x < xs_.front()) return {slope_left_, slope_left_};
    if (x > xs_.back()) return {slope_right_, slope_right_};
    const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
    if (i < n && xs_[i] == x) {
        const double lo = (i == 0) ? slope_left_ : chord(i - 1);
        const double hi = (i + 1 == n) ? slope_right_ : chord(i);
        return {lo, hi};
    }
    const double s = chord(i - 1);
    return {s, s};
}

double ConvexPWL::min_on(double lo, double hi) const {
    if (lo > hi) throw std::invalid_argument("min_on: lo > hi");
    if (lo < domain_lo() || hi > domain_hi())
        throw std::domain_error("min_on: interval leaves the domain");
    double m = std::min(evaluate(lo), evaluate(hi));
    for (std::size_t i = 0; i < xs_.size(); ++i)
        if (lo <= xs_[i] && xs_[i] <= hi) m = std::min(m, ys_[i]);
    return m;
}

ConvexPWL ConvexPWL::shifted(double c) const {
    std::vector<double> ys = ys_;
    for (double& y : ys) y += c;
    ConvexPWL out = *this;
    out.ys_ = std::move(ys);
    return out;
}

bool ConvexPWL::approx_equal(const ConvexPWL& other, double tol) const {
    if (left_cut_ != other.left_cut_ || right_cut_ != other.right_cut_)
        return false;
    if (left_cut_ && !near(xs_.front(), other.xs_.front(), tol)) return false;
    if (right_cut_ && !near(xs_.back(), other.xs_.back(), tol)) return false;
    if (!left_cut_ && !near(slope_left_, other.slope_left_, tol)) return false;
    if (!right_cut_ && !near(slope_right_, other.slope_right_, tol)) return false;
    auto check_values = [&](const ConvexPWL& a, const ConvexPWL& b) {
        for (std::size_t i = 0; i < a.xs_.size(); ++i) {
            const double x = std::clamp(a.xs_[i], b.domain_lo(), b.domain_hi());
            if (!near(a.ys_[i], b.evaluate(x), tol)) return false;
        }
        return true;
    };
    return check_values(*this, other) && check_values(other, *this);
}

bool vertexwise_equal(const ConvexPWL& f, const ConvexPWL& g, double tol) {
    if (f.size() != g.size()) return false;
    if (f.left_cut() != g.left_cut() || f.right_cut() != g.right_cut())
        return false;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!near(f.breakpoints()[i], g.breakpoints()[i], tol)) return false;
        if (!near(f.values()[i], g.values()[i], tol)) return false;
    }
    if (!f.left_cut() && !near(f.slope_left(), g.slope_left(), tol)) return false;
    if (!f.right_cut() && !near(f.slope_right(), g.slope_right(), tol)) return false;
    return true;
}

ConvexPWL fenchel_conjugate(const ConvexPWL& f) {
    const auto& xs = f.breakpoints();
    const auto& ys = f.values();
    const std::size_t n = xs.size();

    // Slopes of f in increasing order, interleaved with the vertices that
    // separate them.  slopes[k] is active on the segment whose right
    // endpoint is vertex k (left tail: right endpoint is vertex 0).
    std::vector<double> slopes;
    std::vector<std::size_t> left_vertex;  // index of vertex left of slopes[k], n = none
    if (!f.left_cut()) {
        slopes.push_back(f.slope_left());
        left_vertex.push_back(n);  // no vertex to the left
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        slopes.push_back(f.chord(i));
        left_vertex.push_back(i);
    }
    if (!f.right_cut()) {
        slopes.push_back(f.slope_right());
        left_vertex.push_back(n - 1);
    }

    if (slopes.empty()) {
        // single-point domain {x0}: conjugate is the linear map x0*u - y0
        return ConvexPWL::linear(xs.front(), -ys.front());
    }
    if (slopes.front() == slopes.back() && slopes.size() > 1) {
        // purely linear input: conjugate is the indicator of the slope
        const double c = slopes.front();
        return ConvexPWL({c}, {xs.front() * c - ys.front()}, 0.0, 0.0,
                         Interval(c, c));
    }

    std::vector<double> us(slopes.size());
    std::vector<double> vs(slopes.size());
    for (std::size_t k = 0; k < slopes.size(); ++k) {
        const std::size_t j = (left_vertex[k] == n) ? 0 : left_vertex[k];
        us[k] = slopes[k];
        vs[k] = xs[j] * slopes[k] - ys[j];
    }

    // Tails of the conjugate:
    //  - f unbounded on a side  -> conjugate cut at that asymptotic slope;
    //  - f cut at a vertex      -> conjugate tail slope is that vertex.
    const bool cut_left = !f.left_cut();
    const bool cut_right = !f.right_cut();
    const double tail_left = f.left_cut() ? xs.front() : 0.0;
    const double tail_right = f.right_cut() ? xs.back() : 0.0;
    std::optional<Interval> dom;
    if (cut_left || cut_right)
        dom = Interval(cut_left ? us.front() : -inf(),
                       cut_right ? us.back() : inf());
    return ConvexPWL(std::move(us), std::move(vs), tail_left, tail_right, dom);
}

ConvexPWL lower_convex_envelope(const std::vector<ConvexPWL>& fs,
                                const Interval& domain) {
    if (fs.empty())
        throw std::invalid_argument("lower_convex_envelope: empty list");
    struct Pt {
        double x, y;
    };
    std::vector<Pt> pts;
    for (const ConvexPWL& f : fs) {
        if (domain.lo < f.domain_lo() || domain.hi > f.domain_hi())
            throw std::domain_error("lower_convex_envelope: function not finite on domain");
        pts.push_back({domain.lo, f.evaluate(domain.lo)});
        pts.push_back({domain.hi, f.evaluate(domain.hi)});
        const auto& xs = f.breakpoints();
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (domain.lo < xs[i] && xs[i] < domain.hi)
                pts.push_back({xs[i], f.values()[i]});
    }
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    // drop duplicate x keeping the lowest y
    std::vector<Pt> uniq;
    for (const Pt& p : pts)
        if (uniq.empty() || uniq.back().x != p.x) uniq.push_back(p);

    // Andrew monotone chain, lower hull.
    std::vector<Pt> hull;
    for (const Pt& p : uniq) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            const double cross =
                (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x);
            if (cross <= 0.0)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(p);
    }
    std::vector<double> xs, ys;
    xs.reserve(hull.size());
    ys.reserve(hull.size());
    for (const Pt& p : hull) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
    return ConvexPWL(std::move(xs), std::move(ys), 0.0, 0.0, domain);
}

std::pair<double, double> solve_concave_equation(const ConvexPWL& f, double v,
                                                 double c) {
    if (f.left_cut() || f.right_cut())
        throw std::invalid_argument("solve_concave_equation: f must be finite on the line");
    if (!(v - f.slope_left() > 0.0) || !(v - f.slope_right() < 0.0))
        throw std::invalid_argument(
            "solve_concave_equation: x*v - f(x) must tend to -infinity on both sides");

    const auto& xs = f.breakpoints();
    const std::size_t n = xs.size();
    auto g = [&](double x) { return x * v - f.evaluate(x); };

    std::vector<double> gv(n);
    double gmax = -inf();
    for (std::size_t i = 0; i < n; ++i) {
        gv[i] = g(xs[i]);
        gmax = std::max(gmax, gv[i]);
    }
    if (!(gmax > c))
        throw std::domain_error("solve_concave_equation: maximum does not exceed c");

    // left root: first crossing of level c on the increasing side
    double a;
    if (gv.front() >= c) {
        const double s = v - f.slope_left();  // > 0
        a = (gv.front() == c) ? xs.front() : xs.front() - (gv.front() - c) / s;
    } else {
        std::size_t i = 0;
        while (gv[i + 1] < c) ++i;
        if (gv[i + 1] == c) {
            a = xs[i + 1];
        } else {
            const double s = v - f.chord(i);  // > 0 on the increasing side
            a = xs[i] + (c - gv[i]) / s;
        }
    }

    // right root: last crossing on the decreasing side
    double b;
    if (gv.back() >= c) {
        const double s = v - f.slope_right();  // < 0
        b = (gv.back() == c) ? xs.back() : xs.back() + (c - gv.back()) / s;
    } else {
        std::size_t i = n - 1;
        while (gv[i - 1] < c) --i;
        if (gv[i - 1] == c) {
            b = xs[i - 1];
        } else {
            const double s = v - f.chord(i - 1);  // < 0 on the decreasing side
            b = xs[i] + (c - gv[i]) / s;
        }
    }
    return {a, b};
}

MonotonePWL::MonotonePWL(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty())
        throw std::invalid_argument("MonotonePWL: need at least one node");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& nd = nodes_[i];
        if (!std::isfinite(nd.x) || !std::isfinite(nd.left) || !std::isfinite(nd.right))
            throw std::invalid_argument("MonotonePWL: non-finite node");
        if (nd.left > nd.right + kCanonicalTol)
            throw std::invalid_argument("MonotonePWL: left value above right value");
        if (i + 1 < nodes_.size()) {
            if (!(nodes_[i].x < nodes_[i + 1].x))
                throw std::invalid_argument("MonotonePWL: nodes must be strictly increasing");
            if (nd.right > nodes_[i + 1].left + kCanonicalTol)
                throw std::invalid_argument("MonotonePWL: decreasing between nodes");
        }
    }
}

double MonotonePWL::value(double x) const {
    if (x < nodes_.front().x) return nodes_.front().left;
    if (x >= nodes_.back().x) return nodes_.back().right;
    auto it = std::upper_bound(
        nodes_.begin(), nodes_.end(), x,
        [](double q, const Node& nd) { return q < nd.x; });
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
    const Node& lo = nodes_[i - 1];
    if (x == lo.x) return lo.right;
    const Node& hi = nodes_[i];
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.right + t * (hi.left - lo.right);
}

double MonotonePWL::left_limit(double x) const {
    if (x <= nodes_.front().x) return nodes_.front().left;
    if (x > nodes_.back().x) return nodes_.back().right;
    auto it = std::lower_bound(
        nodes_.begin(), nodes_.end(), x,
        [](const Node& nd, double q) { return nd.x < q; });
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin());
    if (i < nodes_.size() && nodes_[i].x == x) return nodes_[i].left;
    const Node& lo = nodes_[i - 1];
    const Node& hi = nodes_[i];
    const double t = (x - lo.x) / (hi.x - lo.x);
    return lo.right + t * (hi.left - lo.right);
}

bool MonotonePWL::is_cdf(double tol) const {
    if (!near(nodes_.front().left, 0.0, tol)) return false;
    if (!near(nodes_.back().right, 1.0, tol)) return false;
    for (const Node& nd : nodes_)
        if (nd.left < -tol || nd.right > 1.0 + tol) return false;
    return true;
}

namespace {

// The completed graph of a CDF, parametrized by t = x + y.  Both x and y
// are nondecreasing along the completed curve and t is strictly
// increasing, so each diagonal line x + y = t meets the graph once.
// diag_x(t) returns the x-coordinate of that point, a PWL function of t.
struct DiagonalCurve {
    std::vector<double> ts;  // t at completed-graph vertices
    std::vector<double> xs;  // x there

    explicit DiagonalCurve(const MonotonePWL& F) {
        for (const auto& nd : F.nodes()) {
            ts.push_back(nd.x + nd.left);
            xs.push_back(nd.x);
            if (nd.right > nd.left) {  // vertical jump
                ts.push_back(nd.x + nd.right);
                xs.push_back(nd.x);
            }
        }
    }

    double diag_x(double t) const {
        if (t <= ts.front()) return xs.front() - (ts.front() - t);
        if (t >= ts.back()) return xs.back() + (t - ts.back());
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - ts.begin());
        const double t0 = ts[i - 1], t1 = ts[i];
        if (t == t0) return xs[i - 1];
        const double w = (t - t0) / (t1 - t0);
        return xs[i - 1] + w * (xs[i] - xs[i - 1]);
    }
};

}  // namespace

double levy_distance(const MonotonePWL& F, const MonotonePWL& G) {
    if (!F.is_cdf() || !G.is_cdf())
        throw std::invalid_argument("levy_distance: inputs must be CDF descriptors");
    DiagonalCurve cf(F), cg(G);
    std::vector<double> ts;
    ts.reserve(cf.ts.size() + cg.ts.size());
    ts.insert(ts.end(), cf.ts.begin(), cf.ts.end());
    ts.insert(ts.end(), cg.ts.begin(), cg.ts.end());
    double d = 0.0;
    for (double t : ts) d = std::max(d, std::abs(cf.diag_x(t) - cg.diag_x(t)));
    return d;
}

double sup_distance(const ConvexPWL& f, const ConvexPWL& g, const Interval& on) {
    for (const ConvexPWL* h : {&f, &g})
        if (on.lo < h->domain_lo() || on.hi > h->domain_hi())
            throw std::domain_error("sup_distance: function not finite on the interval");
    std::vector<double> cands{on.lo, on.hi};
    for (const ConvexPWL* h : {&f, &g})
        for (double x : h->breakpoints())
            if (on.lo < x && x < on.hi) cands.push_back(x);
    double d = 0.0;
    for (double x : cands) d = std::max(d, std::abs(f.evaluate(x) - g.evaluate(x)));
    return d;
}

}  // namespace iqf
