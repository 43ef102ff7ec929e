#include "amc/json_io.hpp"

#include <chrono>
#include <cstdio>

namespace amc::json_io {

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json make_meta(const std::string& command, std::uint64_t seed, json params,
               bool with_timestamp) {
    json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = command;
    meta["seed"] = seed;
    meta["params"] = std::move(params);
    if (with_timestamp) meta["timestamp"] = iso_timestamp();
    return meta;
}

json state_to_json(const core::AugmentedPartition& state) {
    json arr = json::array();
    for (const auto& p : state.pairs()) arr.push_back({p.mass, p.surplus});
    return arr;
}

json excursions_to_json(const std::vector<sbfw::ExcursionRecord>& excs) {
    json arr = json::array();
    for (const auto& e : excs) {
        json rec;
        rec["start"] = e.start;
        rec["length"] = e.length;
        rec["area"] = e.area;
        rec["marks"] = e.marks;
        arr.push_back(std::move(rec));
    }
    return arr;
}

json report_to_json(const stats::CheckReport& report) {
    json rec;
    rec["name"] = report.name;
    rec["pass"] = report.pass;
    rec["replicas"] = report.replicas;
    rec["seed"] = report.seed;
    rec["threshold"] = report.threshold;
    json est;
    for (const auto& [k, v] : report.estimates) est[k] = v;
    rec["estimates"] = std::move(est);
    json se;
    for (const auto& [k, v] : report.std_errors) se[k] = v;
    rec["std_errors"] = std::move(se);
    return rec;
}

json document(json meta, json data) {
    json doc;
    doc["meta"] = std::move(meta);
    doc["data"] = std::move(data);
    return doc;
}

void append_state_csv(std::string& out, std::uint64_t replica,
                      const core::AugmentedPartition& state) {
    std::uint64_t rank = 0;
    for (const auto& p : state.pairs()) {
        out += std::to_string(replica);
        out += ',';
        out += std::to_string(rank++);
        out += ',';
        out += fmt_double(p.mass);
        out += ',';
        out += std::to_string(p.surplus);
        out += ",\n";
    }
}

void append_excursions_csv(std::string& out, std::uint64_t replica,
                           const std::vector<sbfw::ExcursionRecord>& excs) {
    std::uint64_t rank = 0;
    for (const auto& e : excs) {
        out += std::to_string(replica);
        out += ',';
        out += std::to_string(rank++);
        out += ',';
        out += fmt_double(e.length);
        out += ',';
        out += std::to_string(e.marks);
        out += ',';
        out += fmt_double(e.area);
        out += '\n';
    }
}

}  // namespace amc::json_io
