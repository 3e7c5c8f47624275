#include "bellbox/correlator.hpp"

#include <cmath>

namespace bellbox {

namespace {

double sign_of(int a) { return a == 1 ? 1.0 : -1.0; }

const BellScenario kChsh{2, 2, 2};

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

}  // namespace

std::optional<BoxLabel> box_label_from_string(std::string_view name) {
    if (name == "P0") return BoxLabel::P0;
    if (name == "P1") return BoxLabel::P1;
    if (name == "P2") return BoxLabel::P2;
    if (name == "P3") return BoxLabel::P3;
    if (name == "P4") return BoxLabel::P4;
    if (name == "P3:4") return BoxLabel::P34;
    if (name == "P1:4") return BoxLabel::P14;
    if (name == "PTB") return BoxLabel::PTB;
    if (name == "scarani") return BoxLabel::Scarani;
    return std::nullopt;
}

std::string to_string(BoxLabel label) {
    switch (label) {
        case BoxLabel::P0: return "P0";
        case BoxLabel::P1: return "P1";
        case BoxLabel::P2: return "P2";
        case BoxLabel::P3: return "P3";
        case BoxLabel::P4: return "P4";
        case BoxLabel::P34: return "P3:4";
        case BoxLabel::P14: return "P1:4";
        case BoxLabel::PTB: return "PTB";
        case BoxLabel::Scarani: return "scarani";
    }
    return "?";
}

CorrelatorBox canonical_box(BoxLabel label) {
    CorrelatorBox box;
    switch (label) {
        case BoxLabel::P0:
            break;
        case BoxLabel::P1:
            box.marginals = {1.0, 1.0, 1.0, 1.0};
            box.correlators = {1.0, 1.0, 1.0, 1.0};
            break;
        case BoxLabel::P2:
            box.marginals = {-1.0, -1.0, -1.0, -1.0};
            box.correlators = {1.0, 1.0, 1.0, 1.0};
            break;
        case BoxLabel::P3:
            box.marginals = {1.0, -1.0, 1.0, -1.0};
            box.correlators = {1.0, -1.0, -1.0, 1.0};
            break;
        case BoxLabel::P4:
            box.marginals = {-1.0, 1.0, -1.0, 1.0};
            box.correlators = {1.0, -1.0, -1.0, 1.0};
            break;
        case BoxLabel::P34:
            box.correlators = {1.0, -1.0, -1.0, 1.0};
            break;
        case BoxLabel::P14:
            box.correlators = {1.0, 0.0, 0.0, 1.0};
            break;
        case BoxLabel::PTB:
            box.correlators = {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
            break;
        case BoxLabel::Scarani: {
            // Built from its closed-form probability table, not copied from
            // PTB, so the equality of the two is an observable fact.
            std::vector<double> table(16);
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) {
                            const int parity = (a + b + x * y) % 2;
                            const double s = parity == 0 ? 1.0 : -1.0;
                            table[(x * 2 + y) * 4 + a * 2 + b] =
                                (2.0 + s * std::sqrt(2.0)) / 8.0;
                        }
            return correlators_from_probs(ProbBox::make(kChsh, std::move(table)));
        }
    }
    return box;
}

ProbBox probs_from_correlators(const CorrelatorBox& box, double tol) {
    std::vector<double> table(16);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const double ax = box.marginals[x];
            const double by = box.marginals[2 + y];
            const double axby = box.correlators[y * 2 + x];
            double block_sum = 0.0;
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    double p =
                        (1.0 + sign_of(a) * ax + sign_of(b) * by + sign_of(a) * sign_of(b) * axby) /
                        4.0;
                    if (p < -tol) {
                        throw CorrelatorInfeasible(
                            "p[" + std::to_string(a) + std::to_string(b) + "|" +
                            std::to_string(x) + std::to_string(y) + "] = " + std::to_string(p));
                    }
                    if (p < 0.0) p = 0.0;
                    table[(x * 2 + y) * 4 + a * 2 + b] = p;
                    block_sum += p;
                }
            }
            // Clamping can nudge a block off normalization by up to 4*tol.
            for (int ab = 0; ab < 4; ++ab) table[(x * 2 + y) * 4 + ab] /= block_sum;
        }
    }
    return ProbBox::make(kChsh, std::move(table), tol * 8.0);
}

CorrelatorBox correlators_from_probs(const ProbBox& box) {
    if (!box.scenario().is_chsh()) {
        throw WrongScenario("correlator coordinates require scenario (2,2,2), got " +
                            box.scenario().to_string());
    }
    CorrelatorBox out;
    for (int x = 0; x < 2; ++x) {
        out.marginals[x] = box.party_marginal_mean(0, x, 1) - box.party_marginal_mean(0, x, 0);
        out.marginals[2 + x] = box.party_marginal_mean(1, x, 1) - box.party_marginal_mean(1, x, 0);
    }
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            double c = 0.0;
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    c += sign_of(a) * sign_of(b) * box.at({x, y}, {a, b});
            out.correlators[y * 2 + x] = c;
        }
    }
    return out;
}

ChshValue chsh_value(const CorrelatorBox& box) {
    const auto& c = box.correlators;
    ChshValue value;
    value.canonical = c[0] + c[1] + c[2] - c[3];
    for (int minus = 0; minus < 4; ++minus) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += (i == minus ? -c[i] : c[i]);
        value.max_relabelled = std::max(value.max_relabelled, std::abs(s));
    }
    return value;
}

}  // namespace bellbox
