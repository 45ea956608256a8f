#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <string_view>

#include "bwm/aggregate.hpp"
#include "bwm/pcs.hpp"
#include "bwm/sensitivity.hpp"
#include "bwm/solver.hpp"
#include "bwm/verify.hpp"

namespace bwm::io {

using Json = nlohmann::ordered_json;

enum class Format { Json, Table, Csv };

std::optional<Format> parse_format(std::string_view s);

/// Reads a whole file. Throws ReadFailure.
std::string read_file(const std::string& path);

/// Parses text into JSON. Throws MalformedJson with line and column.
Json parse_json(std::string_view text);

// PCS documents

/// Validates a PcsDocument. `path` prefixes field names in errors.
ValidatedPcs<double> pcs_from_json(const Json& doc, int default_scale_max = kSaatyScaleMax,
                                   const std::string& path = "");
ValidatedPcs<double> parse_pcs(std::string_view text, int default_scale_max = kSaatyScaleMax);
Json pcs_to_json(const Pcs<double>& pcs);

/// One row per criterion: criterion,best_to_others,others_to_worst,role
/// with role "best", "worst" or empty. A header row is required.
ValidatedPcs<double> parse_pcs_csv(std::string_view text, int default_scale_max = kSaatyScaleMax);

// Studies

struct StudyDocument {
  GroupStudy study;
  Json reference;  // free-form metadata, passed through
  std::vector<Warning> warnings;
};

StudyDocument study_from_json(const Json& doc, int default_scale_max = kSaatyScaleMax);
StudyDocument parse_study(std::string_view text, int default_scale_max = kSaatyScaleMax);

// Results

Json pivot_to_json(const Pcs<double>& pcs, const Pivot& pivot);
Json epsilon_table_to_json(const Pcs<double>& pcs, const EpsilonTable<double>& table);
Json solution_to_json(const Pcs<double>& pcs, const AnalyticalSolution<double>& sol);

/// json: the PCS document with a "solution" member, full precision.
/// table/csv: 4 decimals.
std::string render_solution(const Pcs<double>& pcs, const AnalyticalSolution<double>& sol, Format format);

Json equivalence_to_json(const EquivalenceClass& cls, bool include_uncertified = false);
Json aggregation_to_json(const AggregationResult& r);
std::string render_aggregation(const AggregationResult& r, Format format);
Json verification_to_json(const Pcs<double>& pcs, const VerificationReport& rep);
std::string render_verification(const Pcs<double>& pcs, const VerificationReport& rep, Format format);

/// {"code", "message", "field"?}
Json error_to_json(const Error& e);

/// Fixed 4-decimal rendering used by every text format.
std::string fixed4(double v);

}  // namespace bwm::io
