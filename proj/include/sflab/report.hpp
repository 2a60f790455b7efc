#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sflab {

inline constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { Pass, Fail, Inconclusive };

inline const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// One verified fact. `ref` is a stable rule identifier naming what was
/// checked; `residual` is the numeric defect when one applies.
struct CheckItem {
    std::string name;
    std::string ref;
    CheckStatus status = CheckStatus::Pass;
    std::optional<double> residual;
    std::string detail;
};

struct CheckReport {
    std::vector<CheckItem> items;

    void add(CheckItem item) { items.push_back(std::move(item)); }

    void pass(std::string name, std::string ref, std::optional<double> residual = std::nullopt,
              std::string detail = {}) {
        items.push_back({std::move(name), std::move(ref), CheckStatus::Pass, residual,
                         std::move(detail)});
    }
    void fail(std::string name, std::string ref, std::optional<double> residual = std::nullopt,
              std::string detail = {}) {
        items.push_back({std::move(name), std::move(ref), CheckStatus::Fail, residual,
                         std::move(detail)});
    }
    void inconclusive(std::string name, std::string ref, std::string detail = {}) {
        items.push_back({std::move(name), std::move(ref), CheckStatus::Inconclusive, std::nullopt,
                         std::move(detail)});
    }
    void check(bool ok, std::string name, std::string ref,
               std::optional<double> residual = std::nullopt, std::string detail = {}) {
        items.push_back({std::move(name), std::move(ref),
                         ok ? CheckStatus::Pass : CheckStatus::Fail, residual, std::move(detail)});
    }

    void merge(const CheckReport& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
    }

    bool all_pass() const {
        for (const auto& it : items)
            if (it.status == CheckStatus::Fail) return false;
        return true;
    }

    std::size_t count(CheckStatus s) const {
        std::size_t c = 0;
        for (const auto& it : items)
            if (it.status == s) ++c;
        return c;
    }
};

inline nlohmann::json report_to_json(const CheckReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& it : rep.items) {
        nlohmann::json j{{"name", it.name},
                         {"ref", it.ref},
                         {"status", status_name(it.status)},
                         {"detail", it.detail}};
        if (it.residual)
            j["residual"] = *it.residual;
        else
            j["residual"] = nullptr;
        checks.push_back(j);
    }
    return checks;
}

}  // namespace sflab
