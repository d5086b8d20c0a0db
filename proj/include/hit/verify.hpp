#pragma once

#include "hit/hit_space.hpp"

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hit::verify {

inline constexpr int report_schema_version = 1;

enum class Provenance { published, derived };
std::string to_string(Provenance p);

/// One compared quantity inside a report.
struct Check {
    std::string name;
    nlohmann::json expected;
    nlohmann::json computed;
    bool pass = false;
    Provenance provenance = Provenance::published;
    std::string source;  // which published result the expected value comes from
};

struct ClaimParams {
    std::optional<int> k, d, n, b;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::vector<int> ds;

    nlohmann::json to_json() const;
};

struct VerificationReport {
    std::string claim;
    ClaimParams params;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    bool pass = false;
    double runtime_seconds = 0;
    std::uint64_t peak_rss_bytes = 0;

    nlohmann::json to_json(bool with_timing = true) const;
};

/// Raised for unknown claims or missing/invalid parameters (CLI exit code 3).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Hit spaces built during a session are memoised by (k, n).
class Session {
public:
    explicit Session(EngineConfig config = {}) : config_(std::move(config)) {}

    const EngineConfig& config() const noexcept { return config_; }
    std::shared_ptr<const HitSpace> space(int k, Degree n);
    std::size_t dim(int k, Degree n) { return qp_dim(*space(k, n)); }

private:
    EngineConfig config_;
    std::map<std::pair<int, Degree>, std::shared_ptr<const HitSpace>> memo_;
};

using ClaimFn = std::function<VerificationReport(Session&, const ClaimParams&)>;

struct ClaimInfo {
    std::string name;
    std::string summary;
    std::vector<std::string> required;  // parameter names
    ClaimFn run;
};

const std::vector<ClaimInfo>& registry();

/// Runs a registered claim; fills timing and memory. Throws UsageError or BudgetExceeded.
VerificationReport run_claim(Session& session, const std::string& claim, const ClaimParams& params);

/// Published dim(QP_5) in degree 4(2^d - 1).
std::uint64_t published_qp5(int d);

/// Peak resident set size of this process.
std::uint64_t peak_rss_bytes();

}  // namespace hit::verify
