#include "bellbox/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include "bellbox/counting.hpp"
#include "bellbox/rng.hpp"

namespace bellbox {

namespace {

constexpr double kPi = std::numbers::pi;

ProbBox named_box(BoxLabel label) { return probs_from_correlators(canonical_box(label)); }

double chsh_distance(const CorrelatorBox& a, const CorrelatorBox& b) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        s += std::pow(a.marginals[i] - b.marginals[i], 2) +
             std::pow(a.correlators[i] - b.correlators[i], 2);
    }
    return std::sqrt(s);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

std::string fmt_fixed(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

SolverConfig with_early_stop(const SolverConfig& config) {
    auto out = config;
    out.early_stop = true;
    return out;
}

// Deterministic per-trial random stream.
struct Stream {
    std::uint64_t seed;
    int trial;
    int next = 0;
    double u() { return chart_uniform(seed, trial, next++); }
};

QubitRealization random_qubit(Stream& s) {
    QubitRealization r;
    r.state = SchmidtState::make(s.u() * kPi);
    for (int m = 0; m < 4; ++m) {
        const double theta = s.u() * kPi;
        const double phi = s.u() * 2.0 * kPi;
        const double eta = s.u();
        const double kappa = (2.0 * s.u() - 1.0) * (1.0 - eta);
        r.measurements[m] = BinaryMeasurement::make(kappa, eta, theta, phi);
    }
    return r;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

// A random d-level binary effect: unitary conjugation of random eigenvalues
// in [0, 1].
Eigen::MatrixXcd random_binary_effect(int d, Stream& s) {
    Eigen::VectorXd eig(d);
    for (int i = 0; i < d; ++i) eig(i) = s.u();
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            const double t = 2.0 * kPi * s.u();
            const double p = 2.0 * kPi * s.u();
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

ClaimResult claim_prop1(const SolverConfig& config) {
    ClaimResult r;
    r.id = "prop1-q1";
    r.statement =
        "the perfectly correlated unbiased box is outside the product set but two shared "
        "values reach it";
    CorrelatorBox c;
    c.marginals = {0.0, 0.0, 0.0, 0.0};
    c.correlators = {1.0, 1.0, 1.0, 1.0};
    const auto box = probs_from_correlators(c);
    const bool product = is_product_box(box);
    const auto l2 = nearest_in_l_lambda(box, 2, with_early_stop(config));
    r.measured = l2.best_distance;
    r.expected = 0.0;
    r.tolerance = 1e-6;
    r.status = (!product && l2.best_distance < 1e-6) ? "pass" : "fail";
    r.notes.push_back(std::string("product box: ") + (product ? "yes" : "no"));
    r.notes.push_back("distance with two shared values: " + fmt(l2.best_distance));
    return r;
}

ClaimResult claim_prop3(const SolverConfig& config) {
    ClaimResult r;
    r.id = "prop3-superlocality";
    r.statement =
        "two qubits with sharp complementary measurements reproduce the uniform vertex "
        "mixture, which classically needs four shared values";
    const auto target = canonical_box(BoxLabel::P14);
    const auto target_box = named_box(BoxLabel::P14);

    QubitRealization construction;
    construction.state = SchmidtState::make(kPi / 2.0);
    construction.measurements[0] = BinaryMeasurement::make(0.0, 1.0, 0.0, 0.0);
    construction.measurements[1] = BinaryMeasurement::make(0.0, 1.0, kPi / 2.0, 0.0);
    construction.measurements[2] = BinaryMeasurement::make(0.0, 1.0, 0.0, 0.0);
    construction.measurements[3] = BinaryMeasurement::make(0.0, 1.0, kPi / 2.0, 0.0);
    const double construction_distance =
        chsh_distance(qubit_box_analytic(construction), target);

    const auto l4 = nearest_in_l_lambda(target_box, 4, config);
    const auto l3 = nearest_in_l_lambda(target_box, 3, config);

    r.measured = l3.best_distance;
    r.expected = 1e-3;  // heuristic lower bound the three-value search must exceed
    r.tolerance = 0.0;
    const bool pass = construction_distance < 1e-8 && l4.best_distance < 1e-6 &&
                      l3.best_distance > 1e-3;
    r.status = pass ? "pass" : "fail";
    r.notes.push_back("explicit two-qubit construction distance: " +
                      fmt(construction_distance));
    r.notes.push_back("four shared values (exact program): " + fmt(l4.best_distance));
    r.notes.push_back("three shared values, best over " +
                      std::to_string(l3.restarts_used) +
                      " restarts (heuristic): " + fmt(l3.best_distance));
    return r;
}

const std::vector<std::array<double, 3>>& interior_weights() {
    static const std::vector<std::array<double, 3>> points = {
        {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.6, 0.2, 0.2},   {0.2, 0.6, 0.2},
        {0.2, 0.2, 0.6},             {0.45, 0.45, 0.1}, {0.45, 0.1, 0.45},
        {0.1, 0.45, 0.45},           {0.5, 0.3, 0.2},   {0.3, 0.2, 0.5},
        {0.2, 0.5, 0.3}};
    return points;
}

ClaimResult claim_fig3a_nonconvexity(const SolverConfig& config) {
    ClaimResult r;
    r.id = "fig3a-nonconvexity";
    r.statement =
        "the correlated-vertex triangle is hollow for two qubits: edge midpoints are "
        "members, strict interior points are not";
    const std::vector<ProbBox> v = {named_box(BoxLabel::P1), named_box(BoxLabel::P3),
                                    named_box(BoxLabel::P4)};
    double min_interior = std::numeric_limits<double>::infinity();
    for (const auto& w : interior_weights()) {
        const auto probe = mix_boxes(v, {w[0], w[1], w[2]});
        min_interior = std::min(min_interior, nearest_in_q2(probe, config).best_distance);
    }
    double max_mid = 0.0;
    for (int i = 0; i < 3; ++i) {
        const auto probe = mix_boxes({v[i], v[(i + 1) % 3]}, {0.5, 0.5});
        max_mid =
            std::max(max_mid, nearest_in_q2(probe, with_early_stop(config)).best_distance);
    }
    r.measured = min_interior;
    r.expected = 1e-3;  // every interior sample must stay above this
    r.tolerance = 0.0;
    r.status = (min_interior > 1e-3 && max_mid < 1e-6) ? "pass" : "fail";
    r.notes.push_back("minimum distance over " +
                      std::to_string(interior_weights().size()) +
                      " interior samples (heuristic, all weights >= 0.05): " +
                      fmt(min_interior));
    r.notes.push_back("maximum distance over the three edge midpoints: " + fmt(max_mid));
    return r;
}

ClaimResult claim_fig3a_local(const SolverConfig& config) {
    (void)config;
    ClaimResult r;
    r.id = "fig3a-local-full";
    r.statement = "every mixture of the three correlated vertices is local";
    const std::vector<ProbBox> v = {named_box(BoxLabel::P1), named_box(BoxLabel::P3),
                                    named_box(BoxLabel::P4)};
    int nonlocal = 0;
    int tested = 0;
    const auto check = [&](const ProbBox& probe) {
        ++tested;
        if (!local_membership_lp(probe).is_local) ++nonlocal;
    };
    for (const auto& box : v) check(box);
    for (int i = 0; i < 3; ++i) check(mix_boxes({v[i], v[(i + 1) % 3]}, {0.5, 0.5}));
    for (const auto& w : interior_weights()) check(mix_boxes(v, {w[0], w[1], w[2]}));
    r.measured = nonlocal;
    r.expected = 0.0;
    r.tolerance = 0.0;
    r.status = nonlocal == 0 ? "pass" : "fail";
    r.notes.push_back(std::to_string(tested) + " simplex points certified by the exact program");
    r.notes.push_back(
        "the third-weight constraint c4 <= 1 - c3 holds identically on the simplex "
        "(tautology, not a boundary)");
    return r;
}

void attach_scan_notes(ClaimResult& r, const ScanTable& table) {
    for (const auto& row : table.rows) {
        std::string note = "slice " + fmt_fixed(row.slice) + ": critical " +
                           fmt_fixed(row.critical);
        if (row.analytic) note += ", reference " + fmt_fixed(*row.analytic);
        note += ", " + row.verdict;
        r.notes.push_back(note);
    }
}

bool scan_verdicts_clean(const ScanTable& table) {
    return std::all_of(table.rows.begin(), table.rows.end(), [](const ScanRow& row) {
        return row.verdict == "bracketed" || row.verdict == "all-feasible" ||
               row.verdict == "degenerate";
    });
}

ClaimResult scan_claim(const std::string& id, const std::string& statement, BoxLabel third,
                       const char* set_text, bool pvm_only, double bisection_tol,
                       double tolerance, bool report_only, const SolverConfig& config) {
    ClaimResult r;
    r.id = id;
    r.statement = statement;
    auto scan_config = config;
    scan_config.pvm_only = pvm_only;
    ScanOptions options;
    options.n_slices = 5;
    options.bisection_tol = bisection_tol;
    const auto table =
        scan_triangle(named_box(BoxLabel::P0), named_box(BoxLabel::P1), named_box(third),
                      parse_set_descriptor(set_text), scan_config, options);
    r.measured = max_abs_error(table);
    r.expected = 0.0;
    r.tolerance = tolerance;
    const bool ok = r.measured <= tolerance && scan_verdicts_clean(table);
    r.status = report_only ? "report-only" : (ok ? "pass" : "fail");
    if (report_only) {
        r.notes.push_back(std::string("within tolerance: ") + (ok ? "yes" : "no"));
    }
    attach_scan_notes(r, table);
    return r;
}

ClaimResult claim_axiom6(const SolverConfig& config) {
    ClaimResult r;
    r.id = "axiom6-directsum";
    r.statement =
        "attaching a shared classical flag turns a strategy mixture into one dimension-4 "
        "strategy with identical statistics";
    double worst = 0.0;
    int bad_dimension = 0;
    for (int trial = 0; trial < 50; ++trial) {
        Stream s{config.seed, 4000 + trial};
        HybridRealization h;
        const double w = 0.1 + 0.8 * s.u();
        h.weights = {w, 1.0 - w};
        h.components.push_back(embed_qubit(random_qubit(s)));
        h.components.push_back(embed_qubit(random_qubit(s)));
        const auto summed = direct_sum(h);
        if (summed.local_dimension != 4) ++bad_dimension;
        const auto direct = born_box(summed);
        const auto mixed = hybrid_box(h);
        for (std::size_t i = 0; i < direct.table().size(); ++i) {
            worst = std::max(worst, std::abs(direct.table()[i] - mixed.table()[i]));
        }
    }
    r.measured = worst;
    r.expected = 0.0;
    r.tolerance = 1e-12;
    r.status = (worst <= 1e-12 && bad_dimension == 0) ? "pass" : "fail";
    r.notes.push_back("50 random two-component mixtures; worst entrywise gap " + fmt(worst));
    r.notes.push_back("combined local dimension 4 in " +
                      std::to_string(50 - bad_dimension) + "/50 trials");
    return r;
}

// Exact integer identities; measured is the number of mismatches.
ClaimResult claim_formulas_ns(const SolverConfig&) {
    ClaimResult r;
    r.id = "formulas-ns-dimension";
    r.statement = "free statistical dimension (m(v-1)+1)^n - 1 at reference scenarios";
    int bad = 0;
    const auto check = [&](int n, int m, int v, std::int64_t want) {
        const auto got = ns_dimension(BellScenario(n, m, v));
        if (got != want) ++bad;
        r.notes.push_back("(" + std::to_string(n) + "," + std::to_string(m) + "," +
                          std::to_string(v) + ") -> " + std::to_string(got));
    };
    check(2, 2, 2, 8);
    check(2, 3, 2, 15);
    check(3, 2, 2, 26);
    check(2, 2, 3, 24);
    r.measured = bad;
    r.expected = 0.0;
    r.status = bad == 0 ? "pass" : "fail";
    return r;
}

ClaimResult claim_formulas_lambda(const SolverConfig&) {
    ClaimResult r;
    r.id = "formulas-lambda-star";
    r.statement = "worst-case shared-randomness cardinality bounds at reference scenarios";
    int bad = 0;
    const auto check = [&](int n, int m, int v, std::int64_t lower, std::int64_t upper) {
        const auto got = lambda_star_bounds(BellScenario(n, m, v));
        if (got.lower != lower || got.upper != upper) ++bad;
        r.notes.push_back("(" + std::to_string(n) + "," + std::to_string(m) + "," +
                          std::to_string(v) + ") -> [" + std::to_string(got.lower) + ", " +
                          std::to_string(got.upper) + "]");
    };
    check(2, 2, 2, 4, 4);
    check(2, 3, 2, 7, 8);
    check(3, 2, 2, 14, 16);
    r.measured = bad;
    r.expected = 0.0;
    r.status = bad == 0 ? "pass" : "fail";
    return r;
}

ClaimResult claim_formulas_caratheodory(const SolverConfig&) {
    ClaimResult r;
    r.id = "formulas-caratheodory-q";
    r.statement =
        "quantum mixing-cardinality bound equals the statistical dimension; the "
        "convexity-guaranteeing dimension 2(3^n - 1) exists only for two binary inputs";
    int bad = 0;
    if (caratheodory_quantum(BellScenario(2, 2, 2)) != 8) ++bad;
    if (caratheodory_quantum(BellScenario(3, 2, 2)) != 26) ++bad;
    if (caratheodory_quantum(BellScenario(2, 3, 2)) != 15) ++bad;
    const auto m222 = masanes_dimension(BellScenario(2, 2, 2));
    const auto m322 = masanes_dimension(BellScenario(3, 2, 2));
    const auto m232 = masanes_dimension(BellScenario(2, 3, 2));
    if (!m222 || *m222 != 16) ++bad;
    if (!m322 || *m322 != 52) ++bad;
    if (m232.has_value()) ++bad;
    r.notes.push_back("(2,2,2): bound 8, convexity dimension 16");
    r.notes.push_back("(3,2,2): bound 26, convexity dimension 52");
    r.notes.push_back("(2,3,2): bound 15, convexity dimension undefined");
    r.measured = bad;
    r.expected = 0.0;
    r.status = bad == 0 ? "pass" : "fail";
    return r;
}

ClaimResult claim_formulas_separable(const SolverConfig&) {
    ClaimResult r;
    r.id = "formulas-separable-bound";
    r.statement = "fully separable strategies need at most d^n shared values";
    int bad = 0;
    const auto check = [&](int d, int n, std::int64_t want) {
        const auto got = separable_lambda_bound(d, n);
        if (got != want) ++bad;
        r.notes.push_back("d=" + std::to_string(d) + ", n=" + std::to_string(n) + " -> " +
                          std::to_string(got));
    };
    check(2, 2, 4);
    check(3, 2, 9);
    check(4, 2, 16);
    check(2, 3, 8);
    r.measured = bad;
    r.expected = 0.0;
    r.status = bad == 0 ? "pass" : "fail";
    return r;
}

ClaimResult claim_scarani(const SolverConfig&) {
    ClaimResult r;
    r.id = "appC-scarani-discrepancy";
    r.statement =
        "the formula-built scarani box reaches the maximal quantum value of the canonical "
        "combination";
    const auto box = correlators_from_probs(named_box(BoxLabel::Scarani));
    r.measured = chsh_value(box).canonical;
    r.expected = 2.0 * std::sqrt(2.0);
    r.tolerance = 1e-9;
    r.status = "report-only";
    r.notes.push_back(
        "a box at this value is nonlocal, so no separable-state realization can produce "
        "it; the discrepancy is reported, not asserted away");
    r.notes.push_back("canonical combination: " + fmt_fixed(r.measured));
    return r;
}

ClaimResult claim_propA1(const SolverConfig& config) {
    ClaimResult r;
    r.id = "propA1-asymmetric-dims";
    r.statement =
        "pure strategies with local dimensions 2 and 3 produce statistics already "
        "reachable by two qubits";
    double worst = 0.0;
    const int trials = 5;
    for (int trial = 0; trial < trials; ++trial) {
        Stream s{config.seed, 9000 + trial};
        Eigen::VectorXcd psi(6);
        for (int k = 0; k < 6; ++k) {
            psi(k) = std::complex<double>(2.0 * s.u() - 1.0, 2.0 * s.u() - 1.0);
        }
        psi.normalize();
        const Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2);
        const Eigen::MatrixXcd i3 = Eigen::MatrixXcd::Identity(3, 3);
        std::array<Eigen::MatrixXcd, 2> oa, ob;
        for (int x = 0; x < 2; ++x) oa[x] = 2.0 * random_binary_effect(2, s) - i2;
        for (int y = 0; y < 2; ++y) ob[y] = 2.0 * random_binary_effect(3, s) - i3;

        CorrelatorBox c;
        for (int x = 0; x < 2; ++x) {
            c.marginals[x] = (psi.adjoint() * kron(oa[x], i3) * psi)(0).real();
        }
        for (int y = 0; y < 2; ++y) {
            c.marginals[2 + y] = (psi.adjoint() * kron(i2, ob[y]) * psi)(0).real();
        }
        for (int x = 0; x < 2; ++x) {
            for (int y = 0; y < 2; ++y) {
                c.correlators[y * 2 + x] = (psi.adjoint() * kron(oa[x], ob[y]) * psi)(0).real();
            }
        }
        const auto result =
            nearest_in_q2(probs_from_correlators(c), with_early_stop(config));
        worst = std::max(worst, result.best_distance);
    }
    r.measured = worst;
    r.expected = 0.0;
    r.tolerance = 1e-6;
    r.status = worst <= 1e-6 ? "pass" : "fail";
    r.notes.push_back("worst two-qubit match over " + std::to_string(trials) +
                      " random dimension-(2,3) strategies: " + fmt(worst));
    return r;
}

struct Claim {
    std::string id;
    std::function<ClaimResult(const SolverConfig&)> run;
};

const std::vector<Claim>& claim_table() {
    static const std::vector<Claim> claims = {
        {"prop1-q1", claim_prop1},
        {"prop3-superlocality", claim_prop3},
        {"fig3a-nonconvexity", claim_fig3a_nonconvexity},
        {"fig3a-local-full", claim_fig3a_local},
        {"fig3b-boundary",
         [](const SolverConfig& c) {
             return scan_claim("fig3b-boundary",
                               "critical third-vertex weight tracks (1-c1)^(3/2) toward the "
                               "uniform vertex mixture",
                               BoxLabel::P34, "q2", false, 5e-3, 0.01, false, c);
         }},
        {"fig3c-local-boundary",
         [](const SolverConfig& c) {
             return scan_claim("fig3c-local-boundary",
                               "the local boundary toward the tsirelson box sits at "
                               "2^(-1/2)(1-c1), settled exactly",
                               BoxLabel::PTB, "local", false, 1e-9, 1e-6, false, c);
         }},
        {"fig3c-q2-boundary",
         [](const SolverConfig& c) {
             return scan_claim("fig3c-q2-boundary",
                               "the two-qubit boundary toward the tsirelson box tracks "
                               "(1-c1)^(5/4), an empirical fit",
                               BoxLabel::PTB, "q2", false, 5e-3, 0.01, false, c);
         }},
        {"fig3c-pvm-boundary",
         [](const SolverConfig& c) {
             return scan_claim("fig3c-pvm-boundary",
                               "projective-only strategies retreat to roughly (1-c1)^(3/2) "
                               "toward the tsirelson box",
                               BoxLabel::PTB, "q2", true, 5e-3, 0.02, true, c);
         }},
        {"axiom6-directsum", claim_axiom6},
        {"formulas-ns-dimension", claim_formulas_ns},
        {"formulas-lambda-star", claim_formulas_lambda},
        {"formulas-caratheodory-q", claim_formulas_caratheodory},
        {"formulas-separable-bound", claim_formulas_separable},
        {"appC-scarani-discrepancy", claim_scarani},
        {"propA1-asymmetric-dims", claim_propA1},
    };
    return claims;
}

}  // namespace

bool VerificationReport::all_passed() const {
    return std::none_of(claims.begin(), claims.end(),
                        [](const ClaimResult& c) { return c.status == "fail"; });
}

const std::vector<std::string>& verification_claim_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& claim : claim_table()) out.push_back(claim.id);
        return out;
    }();
    return ids;
}

VerificationReport verify_claims(const SolverConfig& config,
                                 const std::vector<std::string>& only) {
    for (const auto& name : only) {
        const auto& ids = verification_claim_ids();
        if (std::find(ids.begin(), ids.end(), name) == ids.end()) {
            throw ParseError("unknown claim id '" + name + "'", 1);
        }
    }
    VerificationReport report;
    for (const auto& claim : claim_table()) {
        if (!only.empty() &&
            std::find(only.begin(), only.end(), claim.id) == only.end()) {
            continue;
        }
        report.claims.push_back(claim.run(config));
    }
    return report;
}

}  // namespace bellbox
