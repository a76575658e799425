#pragma once

#include <string>
#include <vector>

namespace vbeam {

enum class ClaimStatus { Pass, Fail, NotApplicable };

std::string to_string(ClaimStatus s);

// One verified claim: measured value against its bound, plus a free-form
// note (violation details, applicability reasons).
struct ClaimRecord {
    std::string claim_id;
    std::string config;
    double measured = 0.0;
    double bound = 0.0;
    ClaimStatus status = ClaimStatus::Fail;
    std::string note;
};

void write_report_csv(const std::string& path,
                      const std::vector<ClaimRecord>& records);
void write_report_json(const std::string& path,
                       const std::vector<ClaimRecord>& records);

}  // namespace vbeam
