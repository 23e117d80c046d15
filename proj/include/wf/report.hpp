#pragma once

#include <json.hpp>

#include <string>

namespace wf {

struct Report {
    Report() = default;
    explicit Report(std::string n) : name(std::move(n)) {}

    std::string name;
    bool pass = true;
    size_t checked = 0;
    std::string detail;
    nlohmann::json first_failure;  // null when passing

    void fail(std::string why, nlohmann::json where = {}) {
        if (!pass) return;  // keep the first failure
        pass = false;
        detail = std::move(why);
        first_failure = std::move(where);
    }
    nlohmann::json to_json() const {
        nlohmann::json j{{"check", name}, {"status", pass ? "pass" : "fail"}, {"checkedCoefficients", checked}};
        if (!detail.empty()) j["detail"] = detail;
        if (!pass) j["firstFailure"] = first_failure;
        return j;
    }
};

}  // namespace wf
