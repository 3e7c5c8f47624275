#include "bellbox/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bellbox {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

BellScenario::BellScenario(int n, int m, int v) : parties(n), inputs(m), outputs(v) {
    if (n < 1 || m < 1 || v < 2) {
        throw WrongScenario("scenario (" + std::to_string(n) + "," + std::to_string(m) + "," +
                            std::to_string(v) + ") requires n>=1, m>=1, v>=2");
    }
}

std::int64_t BellScenario::input_tuples() const { return ipow(inputs, parties); }
std::int64_t BellScenario::output_tuples() const { return ipow(outputs, parties); }
std::int64_t BellScenario::table_size() const { return input_tuples() * output_tuples(); }

std::string BellScenario::to_string() const {
    std::ostringstream os;
    os << "(" << parties << "," << inputs << "," << outputs << ")";
    return os.str();
}

std::int64_t tuple_to_index(const std::vector<int>& digits, int radix) {
    std::int64_t index = 0;
    for (int d : digits) index = index * radix + d;
    return index;
}

std::vector<int> index_to_tuple(std::int64_t index, int radix, int length) {
    std::vector<int> digits(length, 0);
    for (int i = length - 1; i >= 0; --i) {
        digits[i] = static_cast<int>(index % radix);
        index /= radix;
    }
    return digits;
}

ProbBox ProbBox::make(const BellScenario& scenario, std::vector<double> table, double tol) {
    ProbBox box = make_unchecked(scenario, std::move(table));
    for (double p : box.table_) {
        if (p < -tol) {
            throw InvalidBox("negative probability " + std::to_string(p));
        }
    }
    auto violations = check_no_signalling(box, tol);
    if (!violations.empty()) {
        throw InvalidBox("signalling detected: " + violations.front().detail);
    }
    return box;
}

ProbBox ProbBox::make_unchecked(const BellScenario& scenario, std::vector<double> table) {
    if (static_cast<std::int64_t>(table.size()) != scenario.table_size()) {
        throw InvalidBox("table has " + std::to_string(table.size()) + " entries, scenario " +
                         scenario.to_string() + " needs " +
                         std::to_string(scenario.table_size()));
    }
    const std::int64_t vout = scenario.output_tuples();
    for (std::int64_t xi = 0; xi < scenario.input_tuples(); ++xi) {
        double sum = 0.0;
        for (std::int64_t oi = 0; oi < vout; ++oi) sum += table[xi * vout + oi];
        if (std::abs(sum - 1.0) > kBoxTolerance) {
            throw InvalidBox("input block " + std::to_string(xi) + " sums to " +
                             std::to_string(sum));
        }
    }
    return ProbBox(scenario, std::move(table));
}

ProbBox ProbBox::uniform(const BellScenario& scenario) {
    const double p = 1.0 / static_cast<double>(scenario.output_tuples());
    return ProbBox(scenario, std::vector<double>(scenario.table_size(), p));
}

double ProbBox::at(const std::vector<int>& inputs, const std::vector<int>& outputs) const {
    return at_flat(tuple_to_index(inputs, scenario_.inputs),
                   tuple_to_index(outputs, scenario_.outputs));
}

double ProbBox::at_flat(std::int64_t input_index, std::int64_t output_index) const {
    return table_[input_index * scenario_.output_tuples() + output_index];
}

double ProbBox::party_marginal(int party, int x, int a, const std::vector<int>& context) const {
    const int n = scenario_.parties;
    std::vector<int> in(n);
    int c = 0;
    for (int i = 0; i < n; ++i) in[i] = (i == party) ? x : context[c++];
    const std::int64_t xi = tuple_to_index(in, scenario_.inputs);
    double sum = 0.0;
    for (std::int64_t oi = 0; oi < scenario_.output_tuples(); ++oi) {
        const auto out = index_to_tuple(oi, scenario_.outputs, n);
        if (out[party] == a) sum += at_flat(xi, oi);
    }
    return sum;
}

double ProbBox::party_marginal_mean(int party, int x, int a) const {
    const int n = scenario_.parties;
    const std::int64_t contexts = ipow(scenario_.inputs, n - 1);
    double sum = 0.0;
    for (std::int64_t ci = 0; ci < contexts; ++ci) {
        const auto context = index_to_tuple(ci, scenario_.inputs, n - 1);
        sum += party_marginal(party, x, a, context);
    }
    return sum / static_cast<double>(contexts);
}

std::vector<SignallingViolation> check_no_signalling(const ProbBox& box, double tol) {
    std::vector<SignallingViolation> violations;
    const auto& sc = box.scenario();
    const int n = sc.parties;
    if (n == 1) return violations;
    const std::int64_t contexts = ipow(sc.inputs, n - 1);
    for (int party = 0; party < n; ++party) {
        for (int x = 0; x < sc.inputs; ++x) {
            // One aggregated record per (party, input): the largest
            // cross-context spread over this party's outcome marginals.
            double worst = 0.0;
            int worst_output = -1;
            for (int a = 0; a < sc.outputs; ++a) {
                double lo = 2.0, hi = -1.0;
                for (std::int64_t ci = 0; ci < contexts; ++ci) {
                    const auto context = index_to_tuple(ci, sc.inputs, n - 1);
                    const double p = box.party_marginal(party, x, a, context);
                    lo = std::min(lo, p);
                    hi = std::max(hi, p);
                }
                if (hi - lo > worst) {
                    worst = hi - lo;
                    worst_output = a;
                }
            }
            if (worst > tol) {
                SignallingViolation viol;
                viol.party = party;
                viol.input = x;
                viol.magnitude = worst;
                std::ostringstream os;
                os << "party " << party << ", input " << x << ": marginal of output "
                   << worst_output << " varies by " << worst << " across contexts";
                viol.detail = os.str();
                violations.push_back(std::move(viol));
            }
        }
    }
    return violations;
}

ProbBox mix_boxes(const std::vector<ProbBox>& boxes, const std::vector<double>& weights) {
    if (boxes.empty() || boxes.size() != weights.size()) {
        throw WeightError("need one weight per box, got " + std::to_string(boxes.size()) +
                          " boxes and " + std::to_string(weights.size()) + " weights");
    }
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw WeightError("negative weight " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw WeightError("weights sum to " + std::to_string(sum));
    }
    const BellScenario& sc = boxes.front().scenario();
    for (const auto& b : boxes) {
        if (!(b.scenario() == sc)) {
            throw ScenarioMismatch("cannot mix boxes from " + sc.to_string() + " and " +
                                   b.scenario().to_string());
        }
    }
    std::vector<double> table(sc.table_size(), 0.0);
    for (std::size_t k = 0; k < boxes.size(); ++k) {
        const auto& src = boxes[k].table();
        for (std::size_t i = 0; i < table.size(); ++i) table[i] += weights[k] * src[i];
    }
    return ProbBox::make_unchecked(sc, std::move(table));
}

bool is_product_box(const ProbBox& box, double tol) {
    const auto& sc = box.scenario();
    const int n = sc.parties;
    for (std::int64_t xi = 0; xi < sc.input_tuples(); ++xi) {
        const auto in = index_to_tuple(xi, sc.inputs, n);
        for (std::int64_t oi = 0; oi < sc.output_tuples(); ++oi) {
            const auto out = index_to_tuple(oi, sc.outputs, n);
            double prod = 1.0;
            for (int i = 0; i < n; ++i) prod *= box.party_marginal_mean(i, in[i], out[i]);
            if (std::abs(box.at_flat(xi, oi) - prod) > tol) return false;
        }
    }
    return true;
}

std::int64_t ns_dimension(const BellScenario& scenario) {
    const std::int64_t base = static_cast<std::int64_t>(scenario.inputs) *
                                  (scenario.outputs - 1) +
                              1;
    return ipow(base, scenario.parties) - 1;
}

namespace {

// Joint marginal of the parties in `subset` (ascending indices) producing
// `outs` on `ins`, with every other party's input fixed to 0.
double subset_marginal(const ProbBox& box, const std::vector<int>& subset,
                       const std::vector<int>& ins, const std::vector<int>& outs) {
    const auto& sc = box.scenario();
    const int n = sc.parties;
    std::vector<int> input(n, 0);
    for (std::size_t j = 0; j < subset.size(); ++j) input[subset[j]] = ins[j];
    const std::int64_t xi = tuple_to_index(input, sc.inputs);
    double sum = 0.0;
    for (std::int64_t oi = 0; oi < sc.output_tuples(); ++oi) {
        const auto out = index_to_tuple(oi, sc.outputs, n);
        bool match = true;
        for (std::size_t j = 0; j < subset.size(); ++j) {
            if (out[subset[j]] != outs[j]) {
                match = false;
                break;
            }
        }
        if (match) sum += box.at_flat(xi, oi);
    }
    return sum;
}

// Advances `digits` through {lo..hi}^k in lexicographic order; false once
// exhausted.
bool next_assignment(std::vector<int>& digits, int lo, int hi) {
    for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
        if (digits[i] < hi) {
            ++digits[i];
            std::fill(digits.begin() + i + 1, digits.end(), lo);
            return true;
        }
    }
    return false;
}

}  // namespace

std::vector<double> free_parameters(const ProbBox& box) {
    const auto& sc = box.scenario();
    const int n = sc.parties;
    std::vector<double> params;
    params.reserve(static_cast<std::size_t>(ns_dimension(sc)));
    for (int k = 1; k <= n; ++k) {
        // k-subsets of parties in lexicographic order.
        std::vector<int> subset(k);
        for (int i = 0; i < k; ++i) subset[i] = i;
        while (true) {
            std::vector<int> ins(k, 0);
            do {
                std::vector<int> outs(k, 1);
                do {
                    params.push_back(subset_marginal(box, subset, ins, outs));
                } while (next_assignment(outs, 1, sc.outputs - 1));
            } while (next_assignment(ins, 0, sc.inputs - 1));
            // Advance the combination.
            int i = k - 1;
            while (i >= 0 && subset[i] == n - k + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
    return params;
}

}  // namespace bellbox
