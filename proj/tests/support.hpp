#pragma once

#include <gtest/gtest.h>

#include <functional>

#include "virteq/error.hpp"

namespace virteq::test {

inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::ValidationError;
}

}  // namespace virteq::test
