#pragma once

#include <memory>
#include <string>

#include "json.hpp"

#include "spread/audit.hpp"
#include "spread/coverage.hpp"
#include "spread/mechanism.hpp"
#include "spread/or_model.hpp"

namespace spread {

// Instance files carry a "model" discriminator: "or_single_step",
// "disk_coverage", or "tabular" (assumed when absent). Rationals are
// "num/den" strings throughout.
std::shared_ptr<WelfareModel> model_from_json(const nlohmann::json& j);
std::shared_ptr<WelfareModel> load_model_file(const std::string& path);

// Accepts a file path or a bundled fixture name (counter1, counter2,
// counter3, adverse-competition, extension-infeasibility).
std::shared_ptr<WelfareModel> load_instance(const std::string& path_or_fixture,
                                            const Rational& epsilon = rat(1, 100),
                                            const Rational& N = rat(100));

nlohmann::json or_model_to_json(const OrModel& m);
nlohmann::json coverage_to_json(const CoverageInstance& m);
nlohmann::json tabular_to_json(const TabularModel& m);
nlohmann::json model_to_json(const WelfareModel& m);

nlohmann::json profile_to_json(const WelfareModel& m, const AllocationProfile& p);
AllocationProfile profile_from_json(const WelfareModel& m, const nlohmann::json& j);

nlohmann::json run_result_to_json(const WelfareModel& m, const RunResult& r);
nlohmann::json table_to_json(const WelfareModel& m, const TwoPlayerTable& table);
nlohmann::json audit_report_to_json(const AuditReport& r);
nlohmann::json approx_report_to_json(const ApproxReport& r);

}  // namespace spread
