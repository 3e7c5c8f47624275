#include "bellbox/lhv.hpp"

#include <cmath>
#include <cstdint>
#include <map>

namespace bellbox {

ProbBox strategy_box(const DeterministicStrategy& strategy, const BellScenario& scenario) {
    const int n = scenario.parties;
    if (static_cast<int>(strategy.outputs.size()) != n) {
        throw InvalidModel("strategy covers " + std::to_string(strategy.outputs.size()) +
                           " parties, scenario has " + std::to_string(n));
    }
    for (const auto& per_party : strategy.outputs) {
        if (static_cast<int>(per_party.size()) != scenario.inputs) {
            throw InvalidModel("strategy must fix an output for every input");
        }
        for (int o : per_party) {
            if (o < 0 || o >= scenario.outputs) {
                throw InvalidModel("strategy output " + std::to_string(o) + " out of range");
            }
        }
    }
    std::vector<double> table(scenario.table_size(), 0.0);
    for (std::int64_t xi = 0; xi < scenario.input_tuples(); ++xi) {
        const auto in = index_to_tuple(xi, scenario.inputs, n);
        std::vector<int> out(n);
        for (int p = 0; p < n; ++p) out[p] = strategy.outputs[p][in[p]];
        table[xi * scenario.output_tuples() + tuple_to_index(out, scenario.outputs)] = 1.0;
    }
    return ProbBox::make_unchecked(scenario, std::move(table));
}

LHVModel LHVModel::from_deterministic(const std::vector<double>& weights,
                                      const std::vector<DeterministicStrategy>& strategies,
                                      const BellScenario& scenario) {
    LHVModel model;
    model.weights = weights;
    for (const auto& s : strategies) {
        std::vector<std::vector<std::vector<double>>> per_party;
        for (int p = 0; p < scenario.parties; ++p) {
            std::vector<std::vector<double>> per_input;
            for (int x = 0; x < scenario.inputs; ++x) {
                std::vector<double> dist(scenario.outputs, 0.0);
                dist.at(s.outputs.at(p).at(x)) = 1.0;
                per_input.push_back(std::move(dist));
            }
            per_party.push_back(std::move(per_input));
        }
        model.responses.push_back(std::move(per_party));
    }
    validate(model, scenario);
    return model;
}

void validate(const LHVModel& model, const BellScenario& scenario, double tol) {
    if (model.weights.empty() || model.weights.size() != model.responses.size()) {
        throw InvalidModel("model needs one response table per hidden value");
    }
    double sum = 0.0;
    for (double w : model.weights) {
        if (w < -tol) throw InvalidModel("negative hidden-value weight " + std::to_string(w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw InvalidModel("hidden-value weights sum to " + std::to_string(sum));
    }
    for (const auto& per_lambda : model.responses) {
        if (static_cast<int>(per_lambda.size()) != scenario.parties) {
            throw InvalidModel("response table party count mismatch");
        }
        for (const auto& per_party : per_lambda) {
            if (static_cast<int>(per_party.size()) != scenario.inputs) {
                throw InvalidModel("response table input count mismatch");
            }
            for (const auto& dist : per_party) {
                if (static_cast<int>(dist.size()) != scenario.outputs) {
                    throw InvalidModel("response table output count mismatch");
                }
                double psum = 0.0;
                for (double p : dist) {
                    if (p < -tol) throw InvalidModel("negative response probability");
                    psum += p;
                }
                if (std::abs(psum - 1.0) > 1e-9) {
                    throw InvalidModel("response distribution sums to " + std::to_string(psum));
                }
            }
        }
    }
}

ProbBox lhv_box(const LHVModel& model, const BellScenario& scenario) {
    validate(model, scenario);
    const int n = scenario.parties;
    std::vector<double> table(scenario.table_size(), 0.0);
    for (std::size_t lambda = 0; lambda < model.weights.size(); ++lambda) {
        const auto& resp = model.responses[lambda];
        for (std::int64_t xi = 0; xi < scenario.input_tuples(); ++xi) {
            const auto in = index_to_tuple(xi, scenario.inputs, n);
            for (std::int64_t oi = 0; oi < scenario.output_tuples(); ++oi) {
                const auto out = index_to_tuple(oi, scenario.outputs, n);
                double p = model.weights[lambda];
                for (int party = 0; party < n; ++party) p *= resp[party][in[party]][out[party]];
                table[xi * scenario.output_tuples() + oi] += p;
            }
        }
    }
    return ProbBox::make_unchecked(scenario, std::move(table));
}

LocalVertices enumerate_local_vertices(const BellScenario& scenario, std::int64_t cap) {
    // One response function per party: outputs^inputs choices, independently
    // for each party.
    std::int64_t count = 1;
    for (int p = 0; p < scenario.parties; ++p) {
        for (int x = 0; x < scenario.inputs; ++x) {
            count *= scenario.outputs;
            if (count > cap) {
                throw TooLarge("scenario " + scenario.to_string() + " has more than " +
                               std::to_string(cap) + " deterministic strategies");
            }
        }
    }

    LocalVertices vertices;
    std::map<std::vector<std::int64_t>, bool> seen;
    for (std::int64_t code = 0; code < count; ++code) {
        DeterministicStrategy s;
        std::int64_t rest = code;
        for (int p = 0; p < scenario.parties; ++p) {
            std::vector<int> per_party(scenario.inputs);
            for (int x = 0; x < scenario.inputs; ++x) {
                per_party[x] = static_cast<int>(rest % scenario.outputs);
                rest /= scenario.outputs;
            }
            s.outputs.push_back(std::move(per_party));
        }
        ProbBox box = strategy_box(s, scenario);
        std::vector<std::int64_t> key(box.table().size());
        for (std::size_t i = 0; i < key.size(); ++i) {
            key[i] = static_cast<std::int64_t>(std::llround(box.table()[i] * 1e12));
        }
        if (seen.emplace(std::move(key), true).second) {
            vertices.strategies.push_back(std::move(s));
            vertices.boxes.push_back(std::move(box));
        }
    }
    return vertices;
}

}  // namespace bellbox
