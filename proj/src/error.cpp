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

#include "pspec/error.hpp"

namespace pspec {

const char* status_name(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::usage: return "usage";
    case Status::domain: return "domain";
    case Status::insufficient_data: return "insufficient-data";
    case Status::accuracy: return "accuracy";
    case Status::singular: return "singular";
    case Status::io: return "io";
    case Status::internal: return "internal";
    case Status::check_failed: return "check-failed";
  }
  return "unknown";
}

void fail(Status status, const std::string& what) { throw Error(status, what); }

}  // namespace pspec
