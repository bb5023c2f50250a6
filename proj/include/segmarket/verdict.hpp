#pragma once

#include <string>
#include <utility>

namespace segmarket {

/// Boolean outcome with a human-readable witness naming the first failing
/// condition; the witness is empty when `holds` is true.
struct Verdict {
    bool holds = true;
    std::string witness;

    explicit operator bool() const noexcept { return holds; }

    static Verdict fail(std::string why) { return {false, std::move(why)}; }
};

}  // namespace segmarket
