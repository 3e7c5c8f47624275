#include "bellbox/json_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bellbox {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json general_to_json(const GeneralRealization& r) {
    json effects = json::array();
    for (const auto& party : r.effects) {
        json inputs = json::array();
        for (const auto& input : party) {
            json outputs = json::array();
            for (const auto& effect : input) outputs.push_back(matrix_to_json(effect));
            inputs.push_back(std::move(outputs));
        }
        effects.push_back(std::move(inputs));
    }
    return json{{"type", "general"},
                {"d", r.local_dimension},
                {"state", matrix_to_json(r.rho)},
                {"effects", std::move(effects)}};
}

json qubit_to_json(const QubitRealization& r) {
    json measurements = json::array();
    for (const auto& m : r.measurements) {
        measurements.push_back(json::array({m.kappa, m.eta, m.theta, m.phi}));
    }
    return json{{"type", "qubit"}, {"alpha", r.state.alpha}, {"measurements", measurements}};
}

json lhv_to_json(const LHVModel& model) {
    return json{{"type", "lhv"}, {"weights", model.weights}, {"responses", model.responses}};
}

json hybrid_to_json(const HybridRealization& r) {
    json components = json::array();
    for (const auto& c : r.components) components.push_back(general_to_json(c));
    return json{{"type", "hybrid"}, {"weights", r.weights}, {"components", components}};
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), static_cast<int>(e.byte));
    }
}

const json& require_field(const json& j, const char* name) {
    if (!j.contains(name)) {
        throw ParseError(std::string("missing field '") + name + "'", 1);
    }
    return j.at(name);
}

}  // namespace

std::string box_to_json(const ProbBox& box) {
    const auto& sc = box.scenario();
    const json j{{"scenario", json::array({sc.parties, sc.inputs, sc.outputs})},
                 {"format", "prob"},
                 {"data", box.table()}};
    return j.dump(2);
}

ProbBox box_from_json(const std::string& text) {
    const json j = parse_text(text);
    const auto& scenario_field = require_field(j, "scenario");
    if (!scenario_field.is_array() || scenario_field.size() != 3) {
        throw ParseError("'scenario' must be [parties, inputs, outputs]", 1);
    }
    const BellScenario sc(scenario_field.at(0).get<int>(), scenario_field.at(1).get<int>(),
                          scenario_field.at(2).get<int>());
    const std::string format = require_field(j, "format").get<std::string>();
    const auto data = require_field(j, "data").get<std::vector<double>>();
    if (format == "prob") {
        return ProbBox::make(sc, data);
    }
    if (format == "correlator") {
        if (!sc.is_chsh()) {
            throw ParseError("correlator format requires scenario [2, 2, 2]", 1);
        }
        if (data.size() != 8) {
            throw ParseError("correlator format needs 4 marginals + 4 correlators", 1);
        }
        CorrelatorBox c;
        for (int i = 0; i < 4; ++i) {
            c.marginals[i] = data[i];
            c.correlators[i] = data[4 + i];
        }
        return probs_from_correlators(c);
    }
    throw ParseError("unknown box format '" + format + "'", 1);
}

std::string realization_to_json(const QubitRealization& r) { return qubit_to_json(r).dump(2); }

std::string realization_to_json(const LHVModel& model) { return lhv_to_json(model).dump(2); }

std::string realization_to_json(const HybridRealization& r) { return hybrid_to_json(r).dump(2); }

std::string membership_to_json(const MembershipResult& result) {
    json j{{"verdict", to_string(result.verdict)},
           {"set", result.set_description},
           {"best_distance", result.best_distance},
           {"best_parameters", result.best_parameters},
           {"restarts_used", result.restarts_used},
           {"best_restart", result.best_restart},
           {"trace", result.trace}};
    if (result.qubit) {
        j["realization"] = qubit_to_json(*result.qubit);
    } else if (result.lhv) {
        j["realization"] = lhv_to_json(*result.lhv);
    } else if (result.hybrid) {
        j["realization"] = hybrid_to_json(*result.hybrid);
    }
    return j.dump(2);
}

std::string scan_table_to_json(const ScanTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r{{"slice", row.slice},
               {"critical", row.critical},
               {"analytic", nullptr},
               {"abs_error", nullptr},
               {"verdict", row.verdict},
               {"evaluations", row.evaluations}};
        if (row.analytic) r["analytic"] = *row.analytic;
        if (row.abs_error) r["abs_error"] = *row.abs_error;
        rows.push_back(std::move(r));
    }
    const json j{{"vertices", table.vertices}, {"set", table.set}, {"rows", std::move(rows)}};
    return j.dump(2);
}

ScanTable scan_table_from_json(const std::string& text) {
    const json j = parse_text(text);
    ScanTable table;
    const auto& vertices = require_field(j, "vertices");
    if (!vertices.is_array() || vertices.size() != 3) {
        throw ParseError("'vertices' must name three boxes", 1);
    }
    for (int i = 0; i < 3; ++i) table.vertices[i] = vertices.at(i).get<std::string>();
    table.set = require_field(j, "set").get<std::string>();
    for (const auto& r : require_field(j, "rows")) {
        ScanRow row;
        row.slice = require_field(r, "slice").get<double>();
        row.critical = require_field(r, "critical").get<double>();
        if (r.contains("analytic") && !r.at("analytic").is_null()) {
            row.analytic = r.at("analytic").get<double>();
        }
        if (r.contains("abs_error") && !r.at("abs_error").is_null()) {
            row.abs_error = r.at("abs_error").get<double>();
        }
        row.verdict = require_field(r, "verdict").get<std::string>();
        if (r.contains("evaluations")) row.evaluations = r.at("evaluations").get<int>();
        table.rows.push_back(std::move(row));
    }
    return table;
}

ExportFormat export_format_from_string(const std::string& text) {
    if (text == "csv") return ExportFormat::Csv;
    if (text == "json") return ExportFormat::Json;
    throw ParseError("unknown export format '" + text + "' (expected csv or json)", 1);
}

void export_scan(const ScanTable& table, ExportFormat format, const std::string& path) {
    write_text_file(path,
                    format == ExportFormat::Csv ? scan_to_csv(table) : scan_table_to_json(table));
}

std::string report_to_json(const VerificationReport& report) {
    json claims = json::array();
    for (const auto& claim : report.claims) {
        claims.push_back(json{{"id", claim.id},
                              {"statement", claim.statement},
                              {"status", claim.status},
                              {"measured", claim.measured},
                              {"expected", claim.expected},
                              {"tolerance", claim.tolerance},
                              {"notes", claim.notes}});
    }
    const json j{{"all_passed", report.all_passed()}, {"claims", std::move(claims)}};
    return j.dump(2);
}

ProbBox parse_mixture(const std::string& expr) {
    std::vector<ProbBox> boxes;
    std::vector<double> weights;
    std::size_t pos = 0;
    const auto skip_spaces = [&] {
        while (pos < expr.size() && expr[pos] == ' ') ++pos;
    };
    const auto column = [&] { return static_cast<int>(pos + 1); };
    while (true) {
        skip_spaces();
        double weight = 0.0;
        const auto [next, ec] =
            std::from_chars(expr.data() + pos, expr.data() + expr.size(), weight);
        if (ec != std::errc()) throw ParseError("expected a mixture weight", column());
        pos = static_cast<std::size_t>(next - expr.data());
        skip_spaces();
        if (pos >= expr.size() || expr[pos] != '*') {
            throw ParseError("expected '*' after the weight", column());
        }
        ++pos;
        skip_spaces();
        const std::size_t name_start = pos;
        while (pos < expr.size() && expr[pos] != '+' && expr[pos] != ' ') ++pos;
        const std::string name = expr.substr(name_start, pos - name_start);
        const auto label = box_label_from_string(name);
        if (!label) {
            throw ParseError("unknown box name '" + name + "'",
                             static_cast<int>(name_start + 1));
        }
        boxes.push_back(probs_from_correlators(canonical_box(*label)));
        weights.push_back(weight);
        skip_spaces();
        if (pos == expr.size()) break;
        if (expr[pos] != '+') throw ParseError("expected '+' between mixture terms", column());
        ++pos;
    }
    double sum = 0.0;
    for (const double w : weights) sum += w;
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os.precision(12);
        os << "mixture weights sum to " << sum << ", expected 1";
        throw ParseError(os.str(), 1);
    }
    // Mixing tolerates the allowed rounding slack in the weights.
    for (double& w : weights) w /= sum;
    return mix_boxes(boxes, weights);
}

ProbBox parse_box_spec(const std::string& spec) {
    if (const auto label = box_label_from_string(spec)) {
        return probs_from_correlators(canonical_box(*label));
    }
    if (spec.find('*') != std::string::npos) return parse_mixture(spec);
    return box_from_json(read_text_file(spec));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream os;
    os << in.rdbuf();
    if (in.bad()) throw IoError("failed reading '" + path + "'");
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("failed writing '" + path + "'");
}

}  // namespace bellbox
