#pragma once

#include "wf/algebra.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace wf {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = true;
    double seconds = 0;
    double budget = 0;  // wall-clock limit in seconds
    size_t checked = 0;
    std::string detail;
    nlohmann::json reports = nlohmann::json::array();

    std::string line() const;
    nlohmann::json to_json() const;
};

constexpr int kCriteria = 10;
CriterionResult run_criterion(int id, Straightener& st);

}  // namespace wf
