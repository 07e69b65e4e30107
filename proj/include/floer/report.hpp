#pragma once

#include <string>
#include <vector>

namespace floer {

/// Outcome of a check that collects every failure instead of stopping at
/// the first one.
struct Report {
    std::vector<std::string> failures;

    bool passed() const { return failures.empty(); }
    void fail(std::string message) { failures.push_back(std::move(message)); }
    void merge(const Report& other, const std::string& prefix = {})
    {
        for (const auto& f : other.failures)
            failures.push_back(prefix + f);
    }
};

} // namespace floer
