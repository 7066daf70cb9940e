#include "ckm/report.hpp"

#include <sstream>

#include "json.hpp"

namespace ckm {

std::string report_json(const CheckReport& r) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["suite"] = r.check;
    j["check"] = r.check;
    j["space"] = r.space;
    j["grid"] = r.grid;
    if (r.hbar_order >= 0) j["hbar_order"] = r.hbar_order;
    if (r.degree_bound >= 0) j["degree_bound"] = r.degree_bound;
    j["cases_total"] = r.cases_total;
    j["cases_failed"] = r.cases_failed;
    j["first_failure"] = r.first_failure();
    j["failures"] = r.failures;
    nlohmann::ordered_json notes = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    j["notes"] = notes;
    return j.dump(2);
}

std::string report_text(const CheckReport& r) {
    std::ostringstream os;
    os << (r.ok() ? "[PASS] " : "[FAIL] ") << r.check << " (" << r.space << ", " << r.grid << "): "
       << (r.cases_total - r.cases_failed) << "/" << r.cases_total << " cases";
    for (const auto& [k, v] : r.notes) os << "; " << k << "=" << v;
    if (!r.ok()) os << "; first failure: " << r.first_failure();
    return os.str();
}

} // namespace ckm
