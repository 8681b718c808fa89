#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zp2/dvr.hpp"
#include "zp2/models.hpp"

namespace zp2::acceptance {

// wall-clock ceiling per criterion
constexpr double kTimeLimitSeconds = 60.0;
// all comparisons are exact: the only tolerance is the time limit
constexpr int kPrecisionM = 12;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct Config {
    int p = 3;
    long budget = kDefaultBudget;
    // replaces the cyclotomic Eisenstein polynomial (negative control)
    std::optional<std::vector<std::int64_t>> eisenstein;
};

// criteria run at this prime: 1..14 at p = 3, a subset at p = 5
std::vector<int> criteria_for(int p);
std::string title(int id);

// the ring every criterion runs over; EisensteinError for a corrupted override
RingDescriptor acceptance_ring(const Config& cfg);
// the cyclotomic coefficients with c_1 shifted by one
std::vector<std::int64_t> corrupted_eisenstein(int p);

CriterionResult run_criterion(int id, const Config& cfg);
std::vector<CriterionResult> run_all(const Config& cfg);

// "criterion  N  PASS  title  [detail]  (t s)"
std::string format_line(const CriterionResult& r);

}  // namespace zp2::acceptance
