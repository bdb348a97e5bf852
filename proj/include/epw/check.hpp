#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

namespace epw {

struct NamedCheck {
    std::string name;
    bool pass = false;
};

/** A list of named checks plus the values they were computed from. */
struct CaseReport {
    std::string name;
    std::vector<NamedCheck> checks;
    std::vector<std::pair<std::string, std::string>> values;

    void check(std::string what, bool pass) { checks.push_back({std::move(what), pass}); }
    void value(std::string key, std::string v) { values.emplace_back(std::move(key), std::move(v)); }
    bool ok() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const NamedCheck& c) { return c.pass; });
    }
};

} // namespace epw
