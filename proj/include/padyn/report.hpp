#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "checks.hpp"

namespace padyn {

/// One line of a verification report.
struct Record {
    std::string suite;
    std::size_t index = 0;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::pair<std::string, std::string>> observed;
    std::string expected;
    std::string verdict;
    std::string regime_flag;
};

inline Record to_record(std::string suite, std::size_t index, const CheckResult& r) {
    return Record{std::move(suite), index, r.inputs, r.observed, r.expected, to_string(r.verdict), r.regime_flag};
}

enum class ReportFormat { text, json, csv };

inline ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "text") return ReportFormat::text;
    throw ParseError("unknown format '" + s + "' (expected json, csv or text)");
}

inline nlohmann::ordered_json to_json(const Record& r) {
    nlohmann::ordered_json j;
    j["suite"] = r.suite;
    j["index"] = r.index;
    auto& in = j["inputs"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.inputs) in[k] = v;
    auto& obs = j["observed"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.observed) obs[k] = v;
    j["expected"] = r.expected;
    j["verdict"] = r.verdict;
    j["regime_flag"] = r.regime_flag;
    return j;
}

namespace detail {

inline std::string join_pairs(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string out;
    for (std::size_t i = 0; i < kv.size(); ++i) out += (i ? ";" : "") + kv[i].first + "=" + kv[i].second;
    return out;
}

// RFC 4180: quote fields containing separators, quotes or line breaks.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

inline constexpr const char* kCsvHeader = "suite,index,inputs,observed,expected,verdict,regime_flag";

inline std::string to_csv_row(const Record& r) {
    using detail::csv_field;
    return csv_field(r.suite) + "," + std::to_string(r.index) + "," + csv_field(detail::join_pairs(r.inputs)) + "," +
           csv_field(detail::join_pairs(r.observed)) + "," + csv_field(r.expected) + "," + csv_field(r.verdict) + "," +
           csv_field(r.regime_flag);
}

inline std::string to_text(const Record& r) {
    std::string s = "[" + r.verdict + "] " + r.suite + "#" + std::to_string(r.index);
    if (!r.inputs.empty()) s += " inputs{" + detail::join_pairs(r.inputs) + "}";
    if (!r.observed.empty()) s += " observed{" + detail::join_pairs(r.observed) + "}";
    if (!r.expected.empty()) s += " expected{" + r.expected + "}";
    if (r.regime_flag != "verified") s += " regime=" + r.regime_flag;
    return s;
}

/// Writes records in order; CSV output starts with the header row.
inline void write_records(std::ostream& os, const std::vector<Record>& records, ReportFormat fmt) {
    if (fmt == ReportFormat::csv) os << kCsvHeader << "\r\n";
    for (const auto& r : records) {
        switch (fmt) {
        case ReportFormat::json: os << to_json(r).dump() << "\n"; break;
        case ReportFormat::csv: os << to_csv_row(r) << "\r\n"; break;
        case ReportFormat::text: os << to_text(r) << "\n"; break;
        }
    }
}

} // namespace padyn
