#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "cyclic/statistics.hpp"

namespace cyclic::verify {

enum class Suite { Distributions, Moments, Pde, Limits, Conjecture, All };

std::optional<Suite> parse_suite(std::string_view name);

struct VerifyConfig {
    std::uint64_t seed = 7;
    std::size_t count = 100000;       ///< Monte Carlo draws per ensemble
    std::size_t heat_count = 100000;  ///< paths per speed in the heat limit
    int max_dim = 5;                  ///< largest dimension of the conjecture pairs
    double perturb_density = 1.0;     ///< factor applied to tested CDFs and masses (fault injection)
};

inline constexpr int kCriteria = 13;

struct Check {
    int criterion = 0;     ///< 1..13, 0 for positive controls
    bool blocking = true;  ///< conjecture support rows do not affect the verdict
    stats::TestReport report;
};

/// Checks of one acceptance criterion (1..13).
std::vector<Check> run_criterion(int criterion, const VerifyConfig& cfg);

/// Telegraph-process (d = 1) conditional laws against simulation; these are
/// known to hold and guard the KS machinery itself.
std::vector<Check> run_controls(const VerifyConfig& cfg);

std::vector<Check> run_suite(Suite suite, const VerifyConfig& cfg);

/// True iff every blocking check passed.
bool verdict(const std::vector<Check>& checks);

std::vector<stats::TestReport> reports(const std::vector<Check>& checks);

}  // namespace cyclic::verify
