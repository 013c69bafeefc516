#pragma once

#include "cmdegkit/acceptance.hpp"
#include "cmdegkit/cmdeg.hpp"
#include "cmdegkit/inequalities.hpp"
#include "cmdegkit/kernel.hpp"
#include "cmdegkit/series.hpp"
#include "cmdegkit/strongcm.hpp"

#include <string>
#include <vector>

namespace cmdegkit {

enum class OutputFormat { json, csv, text };

// Accepts "json", "csv", "text"; throws std::invalid_argument otherwise.
OutputFormat parse_format(const std::string& name);

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// All renderers are deterministic: fixed key order, no timestamps, and
// round-trip-exact numbers, so identical inputs give identical bytes.
// JSON payloads carry a top-level "schema": 1 version field.
std::string render(const CMReport& rep, OutputFormat fmt);
std::string render(const DegreeEstimate& est, OutputFormat fmt);
std::string render(const BoundReport& rep, OutputFormat fmt);
std::string render(const SeriesTable& table, OutputFormat fmt);
std::string render(const std::vector<KernelSample>& rows, OutputFormat fmt);
std::string render(const std::vector<LaplaceCheck>& checks, OutputFormat fmt);
std::string render(const ConjectureProbe& probe, OutputFormat fmt);
std::string render(const SuiteResult& suite, OutputFormat fmt);
std::string render_equivalence(const std::string& fn_id,
                               const EquivalenceReport& rep,
                               OutputFormat fmt);
std::string render_eval(const std::string& fn_id, double x, double value,
                        OutputFormat fmt);

} // namespace cmdegkit
