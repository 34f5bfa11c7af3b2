#pragma once

#include <gtest/gtest.h>

#include "pslab/error.hpp"

// Runs stmt and checks that it throws pslab::Error with the given code.
#define EXPECT_PSLAB_ERROR(stmt, expected_code)                                    \
  do {                                                                             \
    bool thrown_ = false;                                                          \
    try {                                                                          \
      stmt;                                                                        \
    } catch (const pslab::Error& e_) {                                             \
      thrown_ = true;                                                              \
      EXPECT_EQ(e_.code(), expected_code) << e_.what();                            \
    }                                                                              \
    EXPECT_TRUE(thrown_) << "expected pslab::Error from " #stmt;                   \
  } while (0)
