#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "bellbox/scenario.hpp"

namespace bellbox {

// Two-party binary correlator coordinates with outputs valued (-1)^(1-a),
// i.e. output 1 maps to +1. Marginals are ordered A0, A1, B0, B1 and full
// correlators A0B0, A1B0, A0B1, A1B1.
struct CorrelatorBox {
    std::array<double, 4> marginals{0.0, 0.0, 0.0, 0.0};
    std::array<double, 4> correlators{0.0, 0.0, 0.0, 0.0};

    bool operator==(const CorrelatorBox&) const = default;
};

inline constexpr std::array<const char*, 4> kMarginalNames{"A0", "A1", "B0", "B1"};
inline constexpr std::array<const char*, 4> kCorrelatorNames{"A0B0", "A1B0", "A0B1", "A1B1"};

// The named boxes used throughout: deterministic vertices P1..P4, their
// mixtures P3:4 and P1:4, the maximally CHSH-violating box PTB, the white
// noise box P0, and the closed-form table "scarani" (which reproduces PTB).
enum class BoxLabel { P0, P1, P2, P3, P4, P34, P14, PTB, Scarani };

std::optional<BoxLabel> box_label_from_string(std::string_view name);
std::string to_string(BoxLabel label);
CorrelatorBox canonical_box(BoxLabel label);

// Reconstructs p[ab|xy] = (1 + s(a)<A_x> + s(b)<B_y> + s(a)s(b)<A_xB_y>)/4
// with s(a) = (-1)^(1-a). Throws CorrelatorInfeasible when any entry would
// be negative beyond tol, which is exactly failure of no-signalling-set
// membership for these coordinates.
ProbBox probs_from_correlators(const CorrelatorBox& box, double tol = kBoxTolerance);

// Inverse map; requires the (2,2,2) scenario. Single-party correlators are
// averaged over the other party's input.
CorrelatorBox correlators_from_probs(const ProbBox& box);

struct ChshValue {
    double canonical = 0.0;       // A0B0 + A1B0 + A0B1 - A1B1
    double max_relabelled = 0.0;  // max over input/output relabellings
};

ChshValue chsh_value(const CorrelatorBox& box);

}  // namespace bellbox
