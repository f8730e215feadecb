// Copyright 2026 The warmrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end and HTTP service of the recommender.

#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "warmrec/model.hpp"

namespace httplib {
class Server;
}

namespace warmrec::app {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitData = 4,
  kExitInternal = 5,
};

/// Entry point of the `warmrec` tool. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Splits "a,b,c" into trimmed, non-empty items.
std::vector<std::string> split_list(std::string_view text);

/// The JSON printed by `warmrec recommend` and served by GET /recommend.
std::string recommend_json(const ModelBundle& model, const std::vector<std::string>& pages,
                           std::size_t n);

std::string health_json(const ModelBundle& model);

/// Registers GET /recommend and GET /health on `server`. The model is
/// shared read-only by all request threads.
void register_routes(httplib::Server& server, std::shared_ptr<const ModelBundle> model);

}  // namespace warmrec::app
