// Copyright 2026 The qlan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLAN_TEST_UTIL_HPP
#define QLAN_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include "qlan/core.hpp"
#include "qlan/error.hpp"

#define EXPECT_QLAN_ERROR(stmt, expected_code)                                   \
    do {                                                                         \
        try {                                                                    \
            stmt;                                                                \
            ADD_FAILURE() << "expected " << qlan::error_code_name(expected_code); \
        } catch (const qlan::Error &e) {                                         \
            EXPECT_EQ(e.code(), expected_code) << e.what();                      \
        }                                                                        \
    } while (0)

namespace qlan::testing {

inline Matrix diag_state(std::initializer_list<double> values) {
    RealVector v(values.size());
    int k = 0;
    for (double x : values) {
        v[k++] = x;
    }
    return v.cast<Complex>().asDiagonal();
}

inline RealVector real_vec(std::initializer_list<double> values) {
    RealVector v(values.size());
    int k = 0;
    for (double x : values) {
        v[k++] = x;
    }
    return v;
}

inline Matrix projector_of(const Vector &v) {
    return v * v.adjoint();
}

}  // namespace qlan::testing

#endif
