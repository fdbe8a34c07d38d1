#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ainf {

// Outcome of a bounded check: how many cases were examined, which failed.
struct Report {
    std::string name;
    long checked = 0;
    long failures = 0;
    std::vector<std::string> witnesses;  // first few failures, verbatim
    std::vector<std::pair<std::string, std::string>> values;

    static constexpr std::size_t max_witnesses = 12;

    bool pass() const { return failures == 0; }
    void fail(std::string what) {
        ++failures;
        if (witnesses.size() < max_witnesses) witnesses.push_back(std::move(what));
    }
    void note(std::string key, std::string value) { values.emplace_back(std::move(key), std::move(value)); }
    void absorb(const Report& o) {
        checked += o.checked;
        failures += o.failures;
        for (const auto& w : o.witnesses)
            if (witnesses.size() < max_witnesses) witnesses.push_back(o.name + ": " + w);
    }
};

}  // namespace ainf
