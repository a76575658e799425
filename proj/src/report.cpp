#include "vbeam/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace vbeam {

std::string to_string(ClaimStatus s) {
    switch (s) {
        case ClaimStatus::Pass: return "pass";
        case ClaimStatus::Fail: return "fail";
        case ClaimStatus::NotApplicable: return "not_applicable";
    }
    return "?";
}

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void write_report_csv(const std::string& path,
                      const std::vector<ClaimRecord>& records) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << "claim_id,config,measured,bound,status,note\n";
    for (const auto& r : records)
        out << csv_escape(r.claim_id) << ',' << csv_escape(r.config) << ','
            << format_value(r.measured) << ',' << format_value(r.bound) << ','
            << to_string(r.status) << ',' << csv_escape(r.note) << "\n";
}

void write_report_json(const std::string& path,
                       const std::vector<ClaimRecord>& records) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records)
        arr.push_back({{"claim_id", r.claim_id},
                       {"config", r.config},
                       {"measured", r.measured},
                       {"bound", r.bound},
                       {"status", to_string(r.status)},
                       {"note", r.note}});
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot open '" + path + "' for writing");
    out << arr.dump(2) << "\n";
}

}  // namespace vbeam
