// Serialization of sampler output and check reports.
//
// Every document is {"meta": {...}, "data": [...]}: meta holds the tool
// version, command, seed and parameters (plus an optional timestamp, off by
// default so identical invocations produce identical bytes); data is one
// record per replica.  CSV output is one row per component or excursion:
// replica, rank, mass_or_length, surplus_or_marks, area (empty when n/a).
#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "amc/core.hpp"
#include "amc/sbfw.hpp"
#include "amc/stats.hpp"

namespace amc::json_io {

using json = nlohmann::ordered_json;

inline constexpr const char* kToolName = "amclab";
inline constexpr const char* kToolVersion = "1.0.0";

json make_meta(const std::string& command, std::uint64_t seed, json params,
               bool with_timestamp);

json state_to_json(const core::AugmentedPartition& state);
json excursions_to_json(const std::vector<sbfw::ExcursionRecord>& excs);
json report_to_json(const stats::CheckReport& report);

json document(json meta, json data);

// CSV rows for a replica's (mass, surplus) state; `area` columns left empty.
void append_state_csv(std::string& out, std::uint64_t replica,
                      const core::AugmentedPartition& state);
void append_excursions_csv(std::string& out, std::uint64_t replica,
                           const std::vector<sbfw::ExcursionRecord>& excs);
inline constexpr const char* kCsvHeader = "replica,rank,mass_or_length,surplus_or_marks,area\n";

}  // namespace amc::json_io
