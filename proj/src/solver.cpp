#include "bellbox/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "bellbox/counting.hpp"
#include "bellbox/rng.hpp"

namespace bellbox {

namespace {

constexpr double kPi = std::numbers::pi;

// Bounded chart coordinates go through u -> (1 + sin u)/2, which is smooth,
// surjective onto [0, 1], and attains both endpoints at finite parameters;
// endpoint values (deterministic weights, projective sharpness) must be
// exactly reachable or boundary boxes stay out of reach of the search.
double squash(double u) { return 0.5 * (1.0 + std::sin(u)); }
double draw_squash(double v) { return std::asin(2.0 * v - 1.0); }

std::vector<double> coords_of(const CorrelatorBox& c) {
    std::vector<double> out(8);
    for (int i = 0; i < 4; ++i) out[i] = c.marginals[i];
    for (int i = 0; i < 4; ++i) out[4 + i] = c.correlators[i];
    return out;
}

std::vector<double> comparison_coords(const ProbBox& box) {
    if (box.scenario().is_chsh()) return coords_of(correlators_from_probs(box));
    return free_parameters(box);
}

double coord_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

// k simplex weights from k-1 parameters; w_i = s_i * prod_{j<i} (1 - s_j).
std::vector<double> stick_weights(const double* u, int k) {
    std::vector<double> w(k);
    double rest = 1.0;
    for (int i = 0; i + 1 < k; ++i) {
        const double s = squash(u[i]);
        w[i] = rest * s;
        rest *= 1.0 - s;
    }
    w[k - 1] = rest;
    return w;
}

constexpr int qubit_param_count(bool pvm) { return pvm ? 9 : 17; }

// Layout: alpha, then per measurement theta, phi (, eta, t); kappa is
// t * (1 - eta) so the measurement is valid for every parameter value.
QubitRealization decode_qubit(const double* p, bool pvm) {
    QubitRealization r;
    r.state.alpha = squash(p[0]) * kPi;
    int idx = 1;
    for (int m = 0; m < 4; ++m) {
        const double theta = squash(p[idx++]) * kPi;
        const double phi = p[idx++];
        double eta = 1.0, kappa = 0.0;
        if (!pvm) {
            eta = squash(p[idx++]);
            kappa = (2.0 * squash(p[idx++]) - 1.0) * (1.0 - eta);
        }
        r.measurements[m] = BinaryMeasurement{kappa, eta, theta, phi};
    }
    return r;
}

void draw_qubit(std::uint64_t seed, int restart, int base, bool pvm, Eigen::VectorXd& x) {
    int idx = base;
    x(idx) = draw_squash(chart_uniform(seed, restart, idx));
    ++idx;
    for (int m = 0; m < 4; ++m) {
        x(idx) = draw_squash(chart_uniform(seed, restart, idx));
        ++idx;
        x(idx) = 2.0 * kPi * chart_uniform(seed, restart, idx);
        ++idx;
        if (!pvm) {
            x(idx) = draw_squash(chart_uniform(seed, restart, idx));
            ++idx;
            x(idx) = draw_squash(chart_uniform(seed, restart, idx));
            ++idx;
        }
    }
}

QubitRealization folded(const QubitRealization& r) {
    QubitRealization out;
    out.state = SchmidtState::make(std::clamp(r.state.alpha, 0.0, kPi));
    for (int i = 0; i < 4; ++i) {
        const auto& m = r.measurements[i];
        out.measurements[i] = BinaryMeasurement::make(m.kappa, m.eta, m.theta, m.phi);
    }
    return out;
}

// Mixtures of qubit strategies; cardinality 1 is the plain two-qubit set.
struct HybridQubitChart {
    int cardinality = 1;
    bool pvm = false;
    std::uint64_t seed = 0;

    int dim() const { return (cardinality - 1) + cardinality * qubit_param_count(pvm); }

    QubitRealization component(const Eigen::VectorXd& x, int i) const {
        return decode_qubit(x.data() + (cardinality - 1) + i * qubit_param_count(pvm), pvm);
    }

    std::vector<double> weights(const Eigen::VectorXd& x) const {
        return stick_weights(x.data(), cardinality);
    }

    std::vector<double> coords(const Eigen::VectorXd& x) const {
        std::vector<double> acc(8, 0.0);
        const auto w = weights(x);
        for (int i = 0; i < cardinality; ++i) {
            const auto c = coords_of(qubit_box_analytic(component(x, i)));
            for (int j = 0; j < 8; ++j) acc[j] += w[i] * c[j];
        }
        return acc;
    }

    Eigen::VectorXd draw(int restart) const {
        Eigen::VectorXd x(dim());
        for (int i = 0; i + 1 < cardinality; ++i) {
            x(i) = draw_squash(chart_uniform(seed, restart, i));
        }
        for (int i = 0; i < cardinality; ++i) {
            draw_qubit(seed, restart, (cardinality - 1) + i * qubit_param_count(pvm), pvm, x);
        }
        return x;
    }
};

// Mixtures of product boxes with stochastic single-party responses.
struct ProductMixChart {
    BellScenario sc{2, 2, 2};
    int cardinality = 1;
    std::uint64_t seed = 0;

    int per_party() const { return sc.inputs * (sc.outputs - 1); }
    int per_component() const { return sc.parties * per_party(); }
    int dim() const { return (cardinality - 1) + cardinality * per_component(); }

    LHVModel decode(const Eigen::VectorXd& x) const {
        LHVModel model;
        model.weights = stick_weights(x.data(), cardinality);
        for (int i = 0; i < cardinality; ++i) {
            int idx = (cardinality - 1) + i * per_component();
            std::vector<std::vector<std::vector<double>>> parties;
            for (int p = 0; p < sc.parties; ++p) {
                std::vector<std::vector<double>> inputs;
                for (int in = 0; in < sc.inputs; ++in) {
                    std::vector<double> dist(sc.outputs);
                    double rest = 1.0;
                    for (int o = 0; o + 1 < sc.outputs; ++o) {
                        const double s = squash(x(idx++));
                        dist[o] = rest * s;
                        rest *= 1.0 - s;
                    }
                    dist[sc.outputs - 1] = rest;
                    inputs.push_back(std::move(dist));
                }
                parties.push_back(std::move(inputs));
            }
            model.responses.push_back(std::move(parties));
        }
        return model;
    }

    std::vector<double> coords(const Eigen::VectorXd& x) const {
        const LHVModel model = decode(x);
        if (sc.is_chsh()) {
            std::vector<double> acc(8, 0.0);
            for (std::size_t l = 0; l < model.weights.size(); ++l) {
                const auto& resp = model.responses[l];
                const double w = model.weights[l];
                double marg[4];
                for (int x2 = 0; x2 < 2; ++x2) {
                    marg[x2] = 2.0 * resp[0][x2][1] - 1.0;
                    marg[2 + x2] = 2.0 * resp[1][x2][1] - 1.0;
                }
                for (int i = 0; i < 4; ++i) acc[i] += w * marg[i];
                for (int xx = 0; xx < 2; ++xx)
                    for (int yy = 0; yy < 2; ++yy)
                        acc[4 + yy * 2 + xx] += w * marg[xx] * marg[2 + yy];
            }
            return acc;
        }
        // General scenario: free parameters of the mixture, which are
        // weighted products of single-party subset marginals.
        std::vector<double> table(sc.table_size(), 0.0);
        for (std::size_t l = 0; l < model.weights.size(); ++l) {
            const auto& resp = model.responses[l];
            for (std::int64_t xi = 0; xi < sc.input_tuples(); ++xi) {
                const auto in = index_to_tuple(xi, sc.inputs, sc.parties);
                for (std::int64_t oi = 0; oi < sc.output_tuples(); ++oi) {
                    const auto out = index_to_tuple(oi, sc.outputs, sc.parties);
                    double p = model.weights[l];
                    for (int party = 0; party < sc.parties; ++party) {
                        p *= resp[party][in[party]][out[party]];
                    }
                    table[xi * sc.output_tuples() + oi] += p;
                }
            }
        }
        return free_parameters(ProbBox::make_unchecked(sc, std::move(table)));
    }

    Eigen::VectorXd draw(int restart) const {
        Eigen::VectorXd x(dim());
        for (int i = 0; i < dim(); ++i) x(i) = draw_squash(chart_uniform(seed, restart, i));
        return x;
    }
};

// Mixtures of explicit dimension-d strategies: Schmidt-diagonal pure states
// and binary effects U diag(u) U* with U a product of complex Givens
// rotations (diagonal phases cancel in the conjugation, so these suffice).
struct GeneralDimChart {
    int d = 3;
    int cardinality = 1;
    std::uint64_t seed = 0;

    int givens_count() const { return d * (d - 1) / 2; }
    int per_measurement() const { return d + 2 * givens_count(); }
    int per_component() const { return (d - 1) + 4 * per_measurement(); }
    int dim() const { return (cardinality - 1) + cardinality * per_component(); }

    Eigen::VectorXd schmidt_coefficients(const Eigen::VectorXd& x, int base) const {
        const auto w = stick_weights(x.data() + base, d);
        Eigen::VectorXd c(d);
        for (int i = 0; i < d; ++i) c(i) = std::sqrt(w[i]);
        return c;
    }

    Eigen::MatrixXcd effect(const Eigen::VectorXd& x, int base) const {
        int idx = base;
        Eigen::VectorXd eig(d);
        for (int i = 0; i < d; ++i) eig(i) = squash(x(idx++));
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                const double t = x(idx++);
                const double p = x(idx++);
                Eigen::MatrixXcd g = Eigen::MatrixXcd::Identity(d, d);
                const std::complex<double> e(std::cos(p), std::sin(p));
                g(i, i) = std::cos(t);
                g(i, j) = -std::sin(t) * std::conj(e);
                g(j, i) = std::sin(t) * e;
                g(j, j) = std::cos(t);
                u = u * g;
            }
        }
        return u * eig.asDiagonal() * u.adjoint();
    }

    // Correlator coordinates of component i via the outcome observables
    // O = 2M - I on the Schmidt-diagonal state.
    std::vector<double> component_coords(const Eigen::VectorXd& x, int comp) const {
        const int base = (cardinality - 1) + comp * per_component();
        const Eigen::VectorXd c = schmidt_coefficients(x, base);
        std::array<Eigen::MatrixXcd, 4> obs;
        for (int m = 0; m < 4; ++m) {
            obs[m] = 2.0 * effect(x, base + (d - 1) + m * per_measurement()) -
                     Eigen::MatrixXcd::Identity(d, d);
        }
        std::vector<double> out(8, 0.0);
        for (int m = 0; m < 4; ++m) {
            std::complex<double> marg = 0.0;
            for (int i = 0; i < d; ++i) marg += c(i) * c(i) * obs[m](i, i);
            out[m] = marg.real();
        }
        for (int xx = 0; xx < 2; ++xx) {
            for (int yy = 0; yy < 2; ++yy) {
                std::complex<double> corr = 0.0;
                for (int i = 0; i < d; ++i)
                    for (int j = 0; j < d; ++j)
                        corr += c(i) * c(j) * obs[xx](i, j) * obs[2 + yy](i, j);
                out[4 + yy * 2 + xx] = corr.real();
            }
        }
        return out;
    }

    std::vector<double> coords(const Eigen::VectorXd& x) const {
        const auto w = stick_weights(x.data(), cardinality);
        std::vector<double> acc(8, 0.0);
        for (int i = 0; i < cardinality; ++i) {
            const auto c = component_coords(x, i);
            for (int j = 0; j < 8; ++j) acc[j] += w[i] * c[j];
        }
        return acc;
    }

    GeneralRealization realization(const Eigen::VectorXd& x, int comp) const {
        const int base = (cardinality - 1) + comp * per_component();
        const Eigen::VectorXd c = schmidt_coefficients(x, base);
        Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(d * d);
        for (int i = 0; i < d; ++i) psi(i * d + i) = c(i);
        std::vector<std::vector<std::vector<Eigen::MatrixXcd>>> effects(
            2, std::vector<std::vector<Eigen::MatrixXcd>>(2));
        for (int m = 0; m < 4; ++m) {
            const Eigen::MatrixXcd e1 = effect(x, base + (d - 1) + m * per_measurement());
            effects[m / 2][m % 2] = {Eigen::MatrixXcd::Identity(d, d) - e1, e1};
        }
        return GeneralRealization::from_pure(d, psi, std::move(effects));
    }

    Eigen::VectorXd draw(int restart) const {
        Eigen::VectorXd x(dim());
        int idx = 0;
        for (int i = 0; i + 1 < cardinality; ++i, ++idx) {
            x(idx) = draw_squash(chart_uniform(seed, restart, idx));
        }
        for (int comp = 0; comp < cardinality; ++comp) {
            for (int i = 0; i + 1 < d; ++i, ++idx) {
                x(idx) = draw_squash(chart_uniform(seed, restart, idx));
            }
            for (int m = 0; m < 4; ++m) {
                for (int i = 0; i < d; ++i, ++idx) {
                    x(idx) = draw_squash(chart_uniform(seed, restart, idx));
                }
                for (int g = 0; g < 2 * givens_count(); ++g, ++idx) {
                    x(idx) = 2.0 * kPi * chart_uniform(seed, restart, idx);
                }
            }
        }
        return x;
    }
};

struct ChartOps {
    int dim = 0;
    std::function<Eigen::VectorXd(int)> draw;
    std::function<std::vector<double>(const Eigen::VectorXd&)> coords;
};

MembershipResult run_search(const std::vector<double>& target, const ChartOps& chart,
                            const SolverConfig& config, std::string set_description,
                            Eigen::VectorXd* best_x_out) {
    const Objective objective = [&](const Eigen::VectorXd& x) {
        return coord_distance(chart.coords(x), target);
    };
    MultistartOptions options;
    options.inner.algorithm = config.algorithm;
    options.inner.max_iterations = config.max_iterations;
    options.inner.tolerance = config.optimizer_tolerance;
    options.restarts = config.restarts;
    options.threads = config.threads;
    if (config.early_stop) options.early_stop_below = config.feasibility_tol;

    const auto outcome = multistart_minimize(objective, [&](int r) { return chart.draw(r); },
                                             options);

    MembershipResult result;
    result.set_description = std::move(set_description);
    result.restarts_used = outcome.restarts_used;
    result.best_restart = outcome.best_restart;
    result.best_parameters.assign(outcome.best_x.data(),
                                  outcome.best_x.data() + outcome.best_x.size());
    // Recompute the distance from the decoded parameters rather than trust
    // the optimizer's cached value.
    result.best_distance = coord_distance(chart.coords(outcome.best_x), target);
    if (best_x_out) *best_x_out = outcome.best_x;

    std::ostringstream note;
    note << "multistart: " << outcome.restarts_used << " restarts, best restart "
         << outcome.best_restart << ", distance " << fmt(result.best_distance)
         << (outcome.polished ? " (polished)" : "");
    result.trace.push_back(note.str());

    if (result.best_distance <= config.feasibility_tol) {
        result.verdict = Verdict::Feasible;
        result.trace.push_back("feasible: distance within " + fmt(config.feasibility_tol));
    } else if (result.best_distance > config.infeasibility_tol) {
        result.verdict = Verdict::Infeasible;
        result.trace.push_back("infeasible (heuristic): no candidate within " +
                               fmt(config.infeasibility_tol) + " after " +
                               std::to_string(outcome.restarts_used) + " restarts");
    } else {
        result.verdict = Verdict::Inconclusive;
        result.trace.push_back("inconclusive: distance between the decision thresholds");
    }
    return result;
}

}  // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Feasible: return "feasible";
        case Verdict::Infeasible: return "infeasible";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

MembershipResult nearest_in_q2(const ProbBox& target, const SolverConfig& config) {
    if (!target.scenario().is_chsh()) {
        throw WrongScenario("two-qubit search requires scenario (2,2,2), got " +
                            target.scenario().to_string());
    }
    const HybridQubitChart chart{1, config.pvm_only, config.seed};
    ChartOps ops{chart.dim(), [&](int r) { return chart.draw(r); },
                 [&](const Eigen::VectorXd& x) { return chart.coords(x); }};
    Eigen::VectorXd best;
    auto result = run_search(comparison_coords(target), ops, config,
                             config.pvm_only ? "q2 (projective only)" : "q2", &best);
    result.qubit = folded(chart.component(best, 0));
    return result;
}

MembershipResult local_membership(const ProbBox& target, const SolverConfig& config) {
    (void)config;
    const auto lp = local_membership_lp(target);
    MembershipResult result;
    result.set_description = "local";
    result.best_distance = local_distance(target);
    if (lp.is_local) {
        result.verdict = Verdict::Feasible;
        result.best_parameters = lp.weights;
        result.lhv = local_product_model(target);
        result.trace.push_back("exact linear program: feasible");
        if (result.lhv) {
            result.trace.push_back("product model with " +
                                   std::to_string(result.lhv->cardinality()) +
                                   " hidden values");
        }
    } else {
        result.verdict = Verdict::Infeasible;
        result.best_parameters = lp.witness;
        result.trace.push_back("exact linear program: infeasible");
        result.trace.push_back("witness gap " +
                               fmt(lp.witness_value - lp.witness_threshold) +
                               " (value " + fmt(lp.witness_value) + ", vertex max " +
                               fmt(lp.witness_threshold) + ")");
    }
    return result;
}

MembershipResult nearest_in_l_lambda(const ProbBox& target, int cardinality,
                                     const SolverConfig& config) {
    if (cardinality < 1) {
        throw InvalidModel("cardinality must be at least 1, got " +
                           std::to_string(cardinality));
    }
    const auto bounds = lambda_star_bounds(target.scenario());
    const std::string description = "l:" + std::to_string(cardinality);
    if (cardinality >= bounds.upper) {
        // The limited set already fills the whole polytope.
        auto result = local_membership(target, config);
        result.set_description = description;
        result.trace.insert(result.trace.begin(),
                            "cardinality " + std::to_string(cardinality) +
                                " >= worst-case bound " + std::to_string(bounds.upper) +
                                ": exact linear program");
        if (result.lhv &&
            static_cast<int>(result.lhv->cardinality()) > cardinality) {
            result.trace.push_back("certificate uses " +
                                   std::to_string(result.lhv->cardinality()) +
                                   " hidden values; membership still follows from the bound");
        }
        return result;
    }

    const ProductMixChart chart{target.scenario(), cardinality, config.seed};
    ChartOps ops{chart.dim(), [&](int r) { return chart.draw(r); },
                 [&](const Eigen::VectorXd& x) { return chart.coords(x); }};
    Eigen::VectorXd best;
    auto result = run_search(comparison_coords(target), ops, config, description, &best);
    result.lhv = chart.decode(best);
    return result;
}

MembershipResult nearest_in_hybrid(const ProbBox& target, int local_dimension, int cardinality,
                                   const SolverConfig& config) {
    if (cardinality < 1) {
        throw InvalidModel("cardinality must be at least 1, got " +
                           std::to_string(cardinality));
    }
    if (local_dimension < 1) {
        throw InvalidModel("local dimension must be at least 1");
    }
    if (local_dimension == 1) {
        // Dimension-1 strategies are deterministic-marginal product boxes.
        auto result = nearest_in_l_lambda(target, cardinality, config);
        result.set_description = "hybrid:1:" + std::to_string(cardinality);
        result.trace.insert(result.trace.begin(),
                            "dimension 1 reduces to limited shared randomness");
        return result;
    }
    if (!target.scenario().is_chsh()) {
        throw WrongScenario("hybrid search requires scenario (2,2,2), got " +
                            target.scenario().to_string());
    }
    const std::string description =
        "hybrid:" + std::to_string(local_dimension) + ":" + std::to_string(cardinality);

    if (local_dimension == 2) {
        const HybridQubitChart chart{cardinality, config.pvm_only, config.seed};
        ChartOps ops{chart.dim(), [&](int r) { return chart.draw(r); },
                     [&](const Eigen::VectorXd& x) { return chart.coords(x); }};
        Eigen::VectorXd best;
        auto result = run_search(comparison_coords(target), ops, config, description, &best);
        HybridRealization hybrid;
        hybrid.weights = chart.weights(best);
        for (int i = 0; i < cardinality; ++i) {
            hybrid.components.push_back(embed_qubit(folded(chart.component(best, i))));
        }
        result.hybrid = std::move(hybrid);
        if (cardinality == 1) result.qubit = folded(chart.component(best, 0));
        return result;
    }

    const GeneralDimChart chart{local_dimension, cardinality, config.seed};
    ChartOps ops{chart.dim(), [&](int r) { return chart.draw(r); },
                 [&](const Eigen::VectorXd& x) { return chart.coords(x); }};
    Eigen::VectorXd best;
    auto result = run_search(comparison_coords(target), ops, config, description, &best);
    HybridRealization hybrid;
    const auto w = stick_weights(best.data(), cardinality);
    hybrid.weights = w;
    for (int i = 0; i < cardinality; ++i) hybrid.components.push_back(chart.realization(best, i));
    result.hybrid = std::move(hybrid);
    return result;
}

namespace {

// Reads a decimal integer field, reporting the 1-based column on failure.
int parse_int_field(const std::string& text, std::size_t start, std::size_t end,
                    const char* what) {
    int value = 0;
    bool any = false;
    for (std::size_t i = start; i < end; ++i) {
        if (text[i] < '0' || text[i] > '9') {
            throw ParseError(std::string("expected ") + what + " in set descriptor",
                             static_cast<int>(i + 1));
        }
        value = value * 10 + (text[i] - '0');
        any = true;
    }
    if (!any) {
        throw ParseError(std::string("missing ") + what + " in set descriptor",
                         static_cast<int>(start + 1));
    }
    return value;
}

}  // namespace

SetDescriptor parse_set_descriptor(const std::string& text) {
    SetDescriptor set;
    if (text == "q2") {
        set.kind = SetDescriptor::Kind::Q2;
        return set;
    }
    if (text == "local") {
        set.kind = SetDescriptor::Kind::Local;
        return set;
    }
    if (text.rfind("l:", 0) == 0) {
        set.kind = SetDescriptor::Kind::LimitedLocal;
        set.cardinality = parse_int_field(text, 2, text.size(), "cardinality");
        return set;
    }
    if (text.rfind("hybrid:", 0) == 0) {
        set.kind = SetDescriptor::Kind::Hybrid;
        const std::size_t second = text.find(':', 7);
        if (second == std::string::npos) {
            throw ParseError("hybrid descriptor needs dimension and cardinality",
                             static_cast<int>(text.size() + 1));
        }
        set.local_dimension = parse_int_field(text, 7, second, "dimension");
        set.cardinality = parse_int_field(text, second + 1, text.size(), "cardinality");
        return set;
    }
    throw ParseError("unknown set descriptor '" + text + "' (expected q2, local, l:<k>, or hybrid:<d>:<k>)", 1);
}

std::string to_string(const SetDescriptor& set) {
    switch (set.kind) {
        case SetDescriptor::Kind::Q2: return "q2";
        case SetDescriptor::Kind::Local: return "local";
        case SetDescriptor::Kind::LimitedLocal: return "l:" + std::to_string(set.cardinality);
        case SetDescriptor::Kind::Hybrid:
            return "hybrid:" + std::to_string(set.local_dimension) + ":" +
                   std::to_string(set.cardinality);
    }
    return "?";
}

MembershipResult decide_membership(const ProbBox& target, const SetDescriptor& set,
                                   const SolverConfig& config) {
    switch (set.kind) {
        case SetDescriptor::Kind::Q2: return nearest_in_q2(target, config);
        case SetDescriptor::Kind::Local: return local_membership(target, config);
        case SetDescriptor::Kind::LimitedLocal:
            return nearest_in_l_lambda(target, set.cardinality, config);
        case SetDescriptor::Kind::Hybrid:
            return nearest_in_hybrid(target, set.local_dimension, set.cardinality, config);
    }
    throw InvalidModel("unhandled set descriptor");
}

ChshMaximum maximize_chsh(const SolverConfig& config) {
    const HybridQubitChart chart{1, config.pvm_only, config.seed};
    const Objective objective = [&](const Eigen::VectorXd& x) {
        return -chsh_value(qubit_box_analytic(chart.component(x, 0))).canonical;
    };
    MultistartOptions options;
    options.inner.algorithm = config.algorithm;
    options.inner.max_iterations = config.max_iterations;
    options.inner.tolerance = config.optimizer_tolerance;
    options.restarts = config.restarts;
    options.threads = config.threads;
    const auto outcome =
        multistart_minimize(objective, [&](int r) { return chart.draw(r); }, options);

    ChshMaximum maximum;
    maximum.value = -outcome.best_value;
    maximum.realization = folded(chart.component(outcome.best_x, 0));
    maximum.restarts_used = outcome.restarts_used;
    return maximum;
}

CriticalWeight critical_weight(const std::function<bool(double)>& feasible_at, double tol) {
    CriticalWeight result;
    result.evaluations = 1;
    if (!feasible_at(0.0)) {
        result.verdict = "anchor-not-found";
        result.critical = 0.0;
        return result;
    }
    ++result.evaluations;
    if (feasible_at(1.0)) {
        result.verdict = "all-feasible";
        result.critical = 1.0;
        return result;
    }
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        ++result.evaluations;
        (feasible_at(mid) ? lo : hi) = mid;
    }
    result.verdict = "bracketed";
    result.critical = 0.5 * (lo + hi);
    return result;
}

double critical_weight(const CorrelatorBox& anchor, const CorrelatorBox& direction,
                       const std::function<bool(const ProbBox&)>& membership, double tol) {
    const auto feasible_at = [&](double c) {
        CorrelatorBox blend;
        for (int i = 0; i < 4; ++i) {
            blend.marginals[i] = (1.0 - c) * anchor.marginals[i] + c * direction.marginals[i];
            blend.correlators[i] =
                (1.0 - c) * anchor.correlators[i] + c * direction.correlators[i];
        }
        return membership(probs_from_correlators(blend));
    };
    if (!feasible_at(0.0)) {
        throw AnchorInfeasible("anchor box is not a member of the queried set");
    }
    const auto result = critical_weight(std::function<bool(double)>(feasible_at), tol);
    return result.critical;
}

}  // namespace bellbox
