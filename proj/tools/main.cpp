// Command-line front end: transform dumps, order tests, bound
// constructions, family diagnostics, experiment comparison and embedding
// verification.  JSON on stdout for everything except plot vertex dumps,
// which are CSV.  Exit codes: 0 ok, 2 validation error, 1 computation
// error.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "iqf/json_io.hpp"
#include "iqf/orders.hpp"

namespace fs = std::filesystem;
using iqf::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_file(const std::string& path) {
    return json::parse(read_file(path));
}

iqf::AtomicDistribution load_law(const std::string& path) {
    return iqf::distribution_from_json(parse_file(path));
}

iqf::BinaryExperiment load_experiment(const std::string& path) {
    return iqf::experiment_from_json(parse_file(path));
}

std::vector<iqf::AtomicDistribution> load_family(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    std::vector<iqf::AtomicDistribution> fam;
    for (const auto& f : files) fam.push_back(load_law(f.string()));
    if (fam.empty())
        throw std::invalid_argument("no .json laws found in " + dir);
    return fam;
}

struct Output {
    std::string path;  // empty: stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            if (text.empty() || text.back() != '\n') std::cout << '\n';
        } else {
            std::ofstream out(path);
            if (!out) throw std::invalid_argument("cannot open " + path);
            out << text;
            if (text.empty() || text.back() != '\n') out << '\n';
        }
    }
    void write(const json& j) const { write(j.dump(2)); }
};

struct GridSpec {
    double lo, hi;
    int n;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || g.n < 2)
        throw std::invalid_argument("grid must be lo:hi:n with n >= 2");
    return g;
}

double default_tol() {
    if (const char* env = std::getenv("IQF_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw std::invalid_argument("IQF_TOL is not a number");
        }
    }
    return iqf::kDefaultTol;
}

std::string grid_csv(const GridSpec& g, const std::function<double(double)>& fn) {
    std::ostringstream out;
    out << "x,y\n";
    out.precision(17);
    for (int i = 0; i < g.n; ++i) {
        const double x = g.lo + (g.hi - g.lo) * i / (g.n - 1);
        out << x << ',' << fn(x) << '\n';
    }
    return out.str();
}

void run_dist_transform(const std::string& law_path, const std::string& which,
                        const std::optional<std::string>& grid, const Output& out) {
    const iqf::AtomicDistribution d = load_law(law_path);
    const std::optional<GridSpec> g =
        grid ? std::optional<GridSpec>(parse_grid(*grid)) : std::nullopt;

    auto pwl_or_grid = [&](const iqf::ConvexPWL& f) {
        if (g)
            out.write(grid_csv(*g, [&](double x) { return f.evaluate(x); }));
        else
            out.write(iqf::vertices_to_csv(f));
    };
    auto grid_only = [&](const std::function<double(double)>& fn) {
        if (!g)
            throw std::invalid_argument("transform '" + which + "' needs --grid lo:hi:n");
        out.write(grid_csv(*g, fn));
    };

    if (which == "idf") {
        pwl_or_grid(iqf::idf(d));
    } else if (which == "iqf") {
        pwl_or_grid(iqf::iqf(d));
    } else if (which == "iqf0") {
        pwl_or_grid(iqf::iqf_shift0(d));
    } else if (which == "iqf1") {
        pwl_or_grid(iqf::iqf_shift1(d));
    } else if (which == "lorenz") {
        pwl_or_grid(iqf::iqf_shift0(d));
    } else if (which == "psi") {
        pwl_or_grid(iqf::idf(d).shifted(d.neg_part_mean()));
    } else if (which == "stoploss") {
        // H(x) = Phi(x) + E[X+] - x is convex PWL with tail slopes -1 and 0
        const iqf::ConvexPWL j = iqf::idf(d);
        std::vector<double> ys = j.values();
        for (std::size_t i = 0; i < ys.size(); ++i)
            ys[i] += d.pos_part_mean() - j.breakpoints()[i];
        pwl_or_grid(iqf::ConvexPWL(j.breakpoints(), ys, -1.0, 0.0));
    } else if (which == "potential") {
        grid_only([&](double x) { return iqf::potential(d, x); });
    } else if (which == "cvar") {
        grid_only([&](double u) { return iqf::cvar(d, u); });
    } else if (which == "hl") {
        grid_only([&](double u) { return iqf::hardy_littlewood(d, u); });
    } else {
        throw std::invalid_argument("unknown transform: " + which);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus for integrated distribution and quantile functions"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string out_path;
    app.add_option("--out", out_path, "write output to a file instead of stdout")
        ->capture_default_str();

    // ---- dist ----------------------------------------------------------
    auto* dist = app.add_subcommand("dist", "distribution transforms");
    dist->require_subcommand(1);

    auto* transform = dist->add_subcommand("transform", "dump a transform as CSV");
    std::string law_path, which;
    std::optional<std::string> grid;
    transform->add_option("law", law_path, "law JSON file")->required();
    transform
        ->add_option("which", which,
                     "idf|iqf|iqf0|iqf1|lorenz|cvar|hl|psi|stoploss|potential")
        ->required();
    transform->add_option("--grid", grid, "sample on a grid lo:hi:n");

    auto* fromsamples = dist->add_subcommand("from-samples", "law from a CSV of samples");
    std::string csv_path;
    fromsamples->add_option("csv", csv_path, "CSV file, value[,weight] per line")
        ->required();

    // ---- order ---------------------------------------------------------
    auto* order = app.add_subcommand("order", "convex stochastic order tests");
    std::string order_kind, law_a, law_b;
    double tol = default_tol();
    order->add_option("kind", order_kind, "icx|decx|cx")->required();
    order->add_option("lawA", law_a, "first law JSON")->required();
    order->add_option("lawB", law_b, "second law JSON")->required();
    order->add_option("--tol", tol, "dominance tolerance");

    // ---- bound ---------------------------------------------------------
    auto* bound = app.add_subcommand("bound", "sharp probability bounds");
    bound->require_subcommand(1);
    auto* cantelli = bound->add_subcommand("cantelli", "P(X >= t) over mean-0 laws");
    double sigma = 1.0, tval = 1.0;
    cantelli->add_option("--sigma", sigma, "standard deviation")->required();
    cantelli->add_option("--t", tval, "threshold")->required();
    auto* positive = bound->add_subcommand("positive", "P(X > a) over unit-mean laws");
    double aval = 0.5, bval = 2.0;
    positive->add_option("--a", aval, "threshold in (0,1)")->required();
    positive->add_option("--b", bval, "second moment")->required();

    // ---- limits --------------------------------------------------------
    auto* limits = app.add_subcommand("limits", "tightness and UI diagnostics");
    limits->require_subcommand(1);
    auto* diag = limits->add_subcommand("diag", "family diagnostics");
    std::string family_dir;
    double du = 0.25, dv = 0.75, ddelta = 0.5;
    diag->add_option("family", family_dir, "directory of law JSON files")->required();
    diag->add_option("--u", du, "lower oscillation point");
    diag->add_option("--v", dv, "upper oscillation point");
    diag->add_option("--delta", ddelta, "modulus window");
    auto* dominate = limits->add_subcommand("dominate", "dominating variable");
    std::string dom_dir;
    dominate->add_option("family", dom_dir, "directory of law JSON files")->required();

    // ---- exp -----------------------------------------------------------
    auto* exp = app.add_subcommand("exp", "binary experiments");
    exp->require_subcommand(1);
    auto* risk = exp->add_subcommand("risk", "risk function vertices");
    std::string exp_path;
    risk->add_option("experiment", exp_path, "experiment JSON")->required();
    auto* bayes = exp->add_subcommand("bayes", "minimum Bayes risk curve");
    std::string bayes_path;
    bayes->add_option("experiment", bayes_path, "experiment JSON")->required();
    auto* compare = exp->add_subcommand("compare", "informativeness and deficiency");
    std::string exp_a, exp_b;
    compare->add_option("A", exp_a, "first experiment JSON")->required();
    compare->add_option("B", exp_b, "second experiment JSON")->required();
    compare->add_option("--tol", tol, "dominance tolerance");
    auto* canon = exp->add_subcommand("canon", "canonical measure pair of a ratio law");
    std::string canon_path;
    canon->add_option("mu", canon_path, "ratio-law JSON")->required();

    // ---- embed ---------------------------------------------------------
    auto* embed = app.add_subcommand("embed", "exit-chain embedding");
    embed->require_subcommand(1);
    auto* plan = embed->add_subcommand("plan", "balayage interval sequence");
    std::string mu0_path, mu_path;
    plan->add_option("mu0", mu0_path, "initial law JSON")->required();
    plan->add_option("mu", mu_path, "target law JSON")->required();
    plan->add_option("--tol", tol, "order-precondition tolerance");
    auto* verify = embed->add_subcommand("verify", "Monte Carlo check of the embedding");
    std::string vmu0_path, vmu_path;
    std::uint64_t n = 100000, seed = 1;
    int workers = 0;
    verify->add_option("mu0", vmu0_path, "initial law JSON")->required();
    verify->add_option("mu", vmu_path, "target law JSON")->required();
    verify->add_option("--n", n, "number of chain samples");
    verify->add_option("--seed", seed, "stream seed");
    verify->add_option("--workers", workers, "thread count (0: all cores)");

    CLI11_PARSE(app, argc, argv);
    const Output out{out_path};

    try {
        if (*transform) {
            run_dist_transform(law_path, which, grid, out);
        } else if (*fromsamples) {
            out.write(iqf::to_json(iqf::distribution_from_csv(read_file(csv_path))));
        } else if (*order) {
            const iqf::AtomicDistribution A = load_law(law_a);
            const iqf::AtomicDistribution B = load_law(law_b);
            iqf::OrderVerdict v{false, std::nullopt};
            if (order_kind == "icx")
                v = iqf::leq_icx(A, B, tol);
            else if (order_kind == "decx")
                v = iqf::leq_decx(A, B, tol);
            else if (order_kind == "cx")
                v = iqf::leq_cx(A, B, tol);
            else
                throw std::invalid_argument("unknown order: " + order_kind);
            json j{{"order", order_kind}, {"verdict", v.holds}};
            if (v.witness_u) j["witness_u"] = *v.witness_u;
            out.write(j);
        } else if (*cantelli) {
            const auto [bnd, law] = iqf::cantelli_extremal(sigma, tval);
            out.write(json{{"bound", bnd}, {"law", iqf::to_json(law)}});
        } else if (*positive) {
            const auto [bnd, law] = iqf::positive_tail_extremal(aval, bval);
            out.write(json{{"bound", bnd}, {"law", iqf::to_json(law)}});
        } else if (*diag) {
            const auto fam = load_family(family_dir);
            json j = iqf::to_json(iqf::family_diagnostics(fam, du, dv, ddelta));
            j["u"] = du;
            j["v"] = dv;
            j["delta"] = ddelta;
            j["members"] = fam.size();
            out.write(j);
        } else if (*dominate) {
            out.write(iqf::to_json(iqf::dominating_variable(load_family(dom_dir))));
        } else if (*risk) {
            out.write(iqf::to_json(iqf::risk_function(load_experiment(exp_path))));
        } else if (*bayes) {
            out.write(iqf::to_json(iqf::bayes_risk_curve(load_experiment(bayes_path))));
        } else if (*compare) {
            const iqf::BinaryExperiment A = load_experiment(exp_a);
            const iqf::BinaryExperiment B = load_experiment(exp_b);
            const iqf::Deficiency dAB = iqf::deficiency(A, B);
            const iqf::Deficiency dBA = iqf::deficiency(B, A);
            out.write(json{{"more_informative_AB", iqf::more_informative(A, B, tol)},
                           {"more_informative_BA", iqf::more_informative(B, A, tol)},
                           {"delta2_AB", dAB.delta2},
                           {"delta2_BA", dBA.delta2},
                           {"Delta2", dAB.Delta2}});
        } else if (*canon) {
            const json j = parse_file(canon_path);
            const iqf::AtomicDistribution mu = iqf::distribution_from_json(
                j.contains("mu") ? j.at("mu") : j);
            out.write(iqf::to_json(iqf::canonical_experiment(mu)));
        } else if (*plan) {
            out.write(iqf::to_json(
                iqf::plan_embedding(load_law(mu0_path), load_law(mu_path), tol)));
        } else if (*verify) {
            out.write(iqf::to_json(iqf::monte_carlo_verify(
                load_law(vmu0_path), load_law(vmu_path), n, seed, workers)));
        }
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "computation error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
