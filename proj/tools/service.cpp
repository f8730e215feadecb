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

#include <charconv>

#include "app.hpp"
#include "httplib.h"
#include "json.hpp"

namespace warmrec::app {

namespace {

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(nlohmann::json{{"error", message}}.dump(), "application/json");
}

}  // namespace

std::string health_json(const ModelBundle& model) {
  return nlohmann::json{{"status", "ok"},
                        {"format_version", model.format_version},
                        {"sessions", model.session_count},
                        {"pages", model.page_weights.size()},
                        {"rules", model.rules.rules.size()},
                        {"clusters", model.clustering.clusters.size()},
                        {"documents", model.tfidf.doc_count()},
                        {"top_n", model.params.top_n}}
      .dump();
}

void register_routes(httplib::Server& server, std::shared_ptr<const ModelBundle> model) {
  server.Get("/health", [model](const httplib::Request&, httplib::Response& res) {
    res.set_content(health_json(*model), "application/json");
  });

  server.Get("/recommend", [model](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("pages")) return send_error(res, 400, "missing query parameter 'pages'");
    const auto pages = split_list(req.get_param_value("pages"));
    if (pages.empty()) return send_error(res, 400, "'pages' is empty");

    std::size_t n = model->params.top_n;
    if (req.has_param("n")) {
      const std::string text = req.get_param_value("n");
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc{} || ptr != text.data() + text.size() || n == 0) {
        return send_error(res, 400, "'n' must be a positive integer");
      }
    }
    try {
      res.set_content(recommend_json(*model, pages, n), "application/json");
    } catch (const std::exception& e) {
      send_error(res, 500, e.what());
    }
  });
}

}  // namespace warmrec::app
