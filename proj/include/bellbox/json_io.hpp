#pragma once

#include <string>

#include "bellbox/scan.hpp"
#include "bellbox/solver.hpp"
#include "bellbox/verify.hpp"

namespace bellbox {

// Schema: {"scenario": [n, m, v], "format": "prob" | "correlator",
// "data": [...]} with the probability table flattened input-major, or the
// four marginals followed by the four correlators.
std::string box_to_json(const ProbBox& box);
ProbBox box_from_json(const std::string& text);

std::string realization_to_json(const QubitRealization& r);
std::string realization_to_json(const LHVModel& model);
std::string realization_to_json(const HybridRealization& r);

// Verdict, distances, parameters, trace, and the decoded realization (when
// the search produced one) under "realization".
std::string membership_to_json(const MembershipResult& result);

std::string scan_table_to_json(const ScanTable& table);
ScanTable scan_table_from_json(const std::string& text);

enum class ExportFormat { Csv, Json };
ExportFormat export_format_from_string(const std::string& text);

void export_scan(const ScanTable& table, ExportFormat format, const std::string& path);

std::string report_to_json(const VerificationReport& report);

// A canonical box name, an inline mixture "0.5*P1+0.5*P3", or a path to a
// box JSON file.
ProbBox parse_box_spec(const std::string& spec);
ProbBox parse_mixture(const std::string& expr);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace bellbox
