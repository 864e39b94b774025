/*
 * Copyright (c) 2026 The pspec Authors. All Rights Reserved
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace pspec {

// Numeric values are shared with the C API and the CLI exit codes.
enum class Status : int {
  ok = 0,
  usage = 2,
  domain = 3,
  insufficient_data = 4,
  accuracy = 5,
  singular = 6,
  io = 7,
  internal = 8,
  check_failed = 9,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

[[noreturn]] void fail(Status status, const std::string& what);

inline void require(bool cond, Status status, const std::string& what) {
  if (!cond) fail(status, what);
}

}  // namespace pspec
