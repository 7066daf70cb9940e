#pragma once

#include <map>
#include <string>
#include <vector>

namespace ckm {

/// Outcome of one verification sweep. Failures keep at most a prefix of the
/// rendered residuals; notes carry computed constants (ratio, orientation).
struct CheckReport {
    std::string check;
    std::string space;
    std::string grid;
    int hbar_order = -1;    // -1: not applicable
    int degree_bound = -1;  // -1: not applicable
    long cases_total = 0;
    long cases_failed = 0;
    std::vector<std::string> failures;
    std::map<std::string, std::string> notes;

    static constexpr std::size_t kMaxFailures = 25;

    void pass() { ++cases_total; }
    void fail(const std::string& what) {
        ++cases_total;
        ++cases_failed;
        if (failures.size() < kMaxFailures) failures.push_back(what);
    }
    void check_case(bool ok, const std::string& what) {
        if (ok) pass();
        else fail(what);
    }
    bool ok() const { return cases_failed == 0; }
    std::string first_failure() const { return failures.empty() ? "" : failures.front(); }
};

/// Stable JSON rendering (fixed key order, versioned schema).
std::string report_json(const CheckReport& r);
std::string report_text(const CheckReport& r);

} // namespace ckm
