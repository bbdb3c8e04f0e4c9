#include "iqf/json_io.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace iqf {

namespace {

json slope_or_null(bool cut, double slope) {
    if (cut) return nullptr;
    return slope;
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

}  // namespace

json to_json(const ConvexPWL& f) {
    json j;
    j["breakpoints"] = f.breakpoints();
    j["values"] = f.values();
    j["slope_left"] = slope_or_null(f.left_cut(), f.left_cut() ? 0.0 : f.slope_left());
    j["slope_right"] = slope_or_null(f.right_cut(), f.right_cut() ? 0.0 : f.slope_right());
    if (f.left_cut() || f.right_cut())
        j["domain"] = {f.left_cut() ? json(f.domain_lo()) : json(nullptr),
                       f.right_cut() ? json(f.domain_hi()) : json(nullptr)};
    else
        j["domain"] = nullptr;
    return j;
}

ConvexPWL convex_pwl_from_json(const json& j) {
    const auto xs = j.at("breakpoints").get<std::vector<double>>();
    const auto ys = j.at("values").get<std::vector<double>>();
    const json& sl = j.at("slope_left");
    const json& sr = j.at("slope_right");
    std::optional<Interval> dom;
    if (j.contains("domain") && !j.at("domain").is_null()) {
        const json& d = j.at("domain");
        const double lo = d.at(0).is_null() ? -inf() : d.at(0).get<double>();
        const double hi = d.at(1).is_null() ? inf() : d.at(1).get<double>();
        dom = Interval(lo, hi);
    }
    return ConvexPWL(xs, ys, sl.is_null() ? -inf() : sl.get<double>(),
                     sr.is_null() ? inf() : sr.get<double>(), dom);
}

json to_json(const MonotonePWL& m) {
    json nodes = json::array();
    for (const auto& nd : m.nodes())
        nodes.push_back({{"x", nd.x}, {"left", nd.left}, {"right", nd.right}});
    return json{{"nodes", nodes}};
}

MonotonePWL monotone_pwl_from_json(const json& j) {
    std::vector<MonotonePWL::Node> nodes;
    for (const json& nd : j.at("nodes"))
        nodes.push_back({nd.at("x").get<double>(), nd.at("left").get<double>(),
                         nd.at("right").get<double>()});
    return MonotonePWL(std::move(nodes));
}

json to_json(const AtomicDistribution& d) {
    json atoms = json::array();
    for (std::size_t i = 0; i < d.size(); ++i)
        atoms.push_back({{"x", d.locations()[i]}, {"p", d.masses()[i]}});
    return json{{"atoms", atoms}};
}

AtomicDistribution distribution_from_json(const json& j) {
    std::vector<AtomicDistribution::Atom> atoms;
    for (const json& a : j.at("atoms"))
        atoms.push_back({a.at("x").get<double>(), a.at("p").get<double>()});
    return AtomicDistribution::from_points(std::move(atoms));
}

BinaryExperiment experiment_from_json(const json& j) {
    if (j.contains("mu")) return BinaryExperiment(distribution_from_json(j.at("mu")));
    if (j.contains("p") && j.contains("p_prime")) {
        const auto p = j.at("p").get<std::vector<double>>();
        const auto q = j.at("p_prime").get<std::vector<double>>();
        return BinaryExperiment::from_measures(p, q);
    }
    // a bare distribution object is accepted as mu
    if (j.contains("atoms")) return BinaryExperiment(distribution_from_json(j));
    throw std::invalid_argument("experiment JSON needs \"mu\" or \"p\"/\"p_prime\"");
}

json to_json(const ConcavePWL& b) {
    return json{{"u", b.u}, {"value", b.value}};
}

ConcavePWL concave_pwl_from_json(const json& j) {
    ConcavePWL b;
    b.u = j.at("u").get<std::vector<double>>();
    b.value = j.at("value").get<std::vector<double>>();
    return b;
}

json to_json(const CanonicalExperiment& c) {
    json outcomes = json::array();
    for (std::size_t i = 0; i < c.ratio.size(); ++i)
        outcomes.push_back(
            {{"ratio", c.ratio[i]}, {"p", c.p[i]}, {"p_prime", c.p_prime[i]}});
    // the distinguished outcome where only the alternative puts mass
    outcomes.push_back({{"ratio", nullptr}, {"p", 0.0}, {"p_prime", c.defect}});
    return json{{"outcomes", outcomes}};
}

json to_json(const EmbeddingPlan& plan) {
    json intervals = json::array();
    for (const Interval& I : plan.intervals) intervals.push_back({I.lo, I.hi});
    json laws = json::array();
    for (const auto& d : plan.laws) laws.push_back(to_json(d));
    return json{{"intervals", intervals}, {"laws", laws}, {"exact", plan.exact}};
}

json to_json(const McReport& rep) {
    return json{{"tv_distance", rep.tv_distance},
                {"kolmogorov", rep.kolmogorov},
                {"per_atom_abs_err", rep.per_atom_abs_err},
                {"plan_exact", rep.plan_exact},
                {"n", rep.n},
                {"seed", rep.seed},
                {"workers", rep.workers}};
}

json to_json(const FamilyDiagnostics& diag) {
    return json{{"oscillation", diag.oscillation},
                {"modulus", diag.modulus},
                {"sup_abs_mean", diag.sup_abs_mean}};
}

AtomicDistribution distribution_from_csv(const std::string& text) {
    std::vector<double> values, weights;
    std::istringstream in(text);
    std::string line;
    bool any_weight = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double v;
        if (!(ls >> v)) continue;
        values.push_back(v);
        double w;
        if (ls >> w) {
            any_weight = true;
            weights.resize(values.size() - 1, 1.0);
            weights.push_back(w);
        } else if (any_weight) {
            weights.push_back(1.0);
        }
    }
    if (values.empty())
        throw std::invalid_argument("CSV input contains no values");
    return AtomicDistribution::from_samples(values, weights);
}

std::string vertices_to_csv(const ConvexPWL& f) {
    std::string out = "x,y\n";
    for (std::size_t i = 0; i < f.size(); ++i) {
        out += format_double(f.breakpoints()[i]);
        out += ',';
        out += format_double(f.values()[i]);
        out += '\n';
    }
    return out;
}

}  // namespace iqf
