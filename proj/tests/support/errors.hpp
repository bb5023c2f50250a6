#pragma once

#include <gtest/gtest.h>

#include "segmarket/error.hpp"

namespace support {

/// Runs f and returns the code of the segmarket::Error it throws.
template <class F>
segmarket::ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const segmarket::Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "expected an error";
    return segmarket::ErrorCode::SolverFailure;
}

}  // namespace support
