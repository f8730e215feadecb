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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "app.hpp"
#include "httplib.h"
#include "warmrec/eval.hpp"
#include "warmrec/logparse.hpp"
#include "warmrec/recommender.hpp"
#include "warmrec/synthgen.hpp"
#include "warmrec/textmine.hpp"

namespace warmrec::app {

namespace {

// Raised for argument problems detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::size_t> parse_n_values(const std::string& text) {
  std::vector<std::size_t> values;
  for (const auto& item : split_list(text)) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || v == 0) {
      throw UsageError("--n: '" + item + "' is not a positive integer");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--n: at least one value required");
  return values;
}

struct TrainArgs {
  std::string log, sitemap, docs, config, out;
  std::optional<double> timeout, min_wsupport, min_wconf, cluster_threshold;
  std::optional<std::size_t> max_itemset_size, top_n;
};

int cmd_train(const TrainArgs& a, std::ostream& out, std::ostream& err) {
  Config config;
  if (a.timeout) config.session_timeout_seconds = *a.timeout;
  if (a.min_wsupport) config.mining.min_wsupport = *a.min_wsupport;
  if (a.min_wconf) config.mining.min_wconf = *a.min_wconf;
  if (a.max_itemset_size) config.mining.max_itemset_size = *a.max_itemset_size;
  if (a.cluster_threshold) config.cluster_threshold = *a.cluster_threshold;
  if (a.top_n) config.top_n = *a.top_n;
  // the config file takes precedence over individual flags
  if (!a.config.empty()) config = parse_config(read_file(a.config), config);
  config.validate();

  SessionLog log = load_session_log(a.log, config.session_timeout_seconds);
  SiteMap site;
  if (!a.sitemap.empty()) site = load_sitemap(a.sitemap);

  DocumentCorpus corpus;
  if (a.docs.empty() || !std::filesystem::exists(a.docs)) {
    err << "warning: no document corpus" << (a.docs.empty() ? "" : " at " + a.docs)
        << "; text scores will be 0\n";
  } else {
    corpus = corpus_from_texts(load_texts(a.docs));
  }

  ModelBundle model = train_model(log, site, corpus, config);
  save_model(model, a.out);
  out << "sessions=" << model.session_count << " pages=" << model.page_weights.size()
      << " rules=" << model.rules.rules.size() << " clusters=" << model.clustering.clusters.size()
      << " documents=" << model.tfidf.doc_count() << "\n";
  return kExitOk;
}

int cmd_recommend(const std::string& model_path, const std::string& session, std::size_t n,
                  std::ostream& out, std::ostream& err) {
  if (n == 0) throw UsageError("--n must be at least 1");
  ModelBundle model = load_model(model_path);
  const auto pages = split_list(session);
  std::string json = recommend_json(model, pages, n);
  for (const auto& p : pages) {
    if (!model.page_weights.contains(normalize_url(p))) {
      err << "warning: unknown page " << p << " ignored\n";
    }
  }
  out << json << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string model, test_log, n, out, detail;
  bool rules_only = false;
  std::optional<double> prefix_fraction;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream&) {
  const auto n_values = parse_n_values(a.n);
  ModelBundle model = load_model(a.model);
  SessionLog log = load_session_log(a.test_log, model.params.session_timeout_seconds);
  const double fraction = a.prefix_fraction.value_or(model.params.prefix_fraction);
  auto cases = make_eval_cases(log, fraction);
  if (cases.empty()) throw DataError("test log has no sessions usable for evaluation");
  auto report = evaluate(model, cases, n_values,
                         a.rules_only ? EvalMode::kRulesOnly : EvalMode::kHybrid);
  const std::string csv = report_to_csv(report);
  if (a.out.empty()) {
    out << csv;
  } else {
    write_file(a.out, csv);
    out << "cases=" << report.case_count << " written " << a.out << "\n";
  }
  if (!a.detail.empty()) write_file(a.detail, report_to_json(report) + "\n");
  return kExitOk;
}

int cmd_serve(const std::string& model_path, const std::string& host, int port, std::ostream& out) {
  auto model = std::make_shared<const ModelBundle>(load_model(model_path));
  httplib::Server server;
  register_routes(server, model);
  if (!server.bind_to_port(host, port)) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  out << "serving " << model_path << " on " << host << ":" << port << std::endl;
  server.listen_after_bind();
  return kExitOk;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir, std::ostream& out) {
  SynthSpec spec = parse_synth_spec(read_file(spec_path));
  auto generated = generate(spec);
  write_synth_output(generated, out_dir);
  out << "sessions=" << generated.log.sessions.size() << " pages=" << generated.site.pages.size()
      << " written " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(',', start);
    if (end == std::string_view::npos) end = text.size();
    auto item = text.substr(start, end - start);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.front()))) item.remove_prefix(1);
    while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.remove_suffix(1);
    if (!item.empty()) items.emplace_back(item);
    start = end + 1;
  }
  return items;
}

std::string recommend_json(const ModelBundle& model, const std::vector<std::string>& pages,
                           std::size_t n) {
  auto session = ActiveSession::from_pages(pages, model.page_weights);
  auto options = RecommendOptions::from_config(model.params);
  options.n = n;
  return to_json(recommend(session, model, options));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"warmrec: hybrid web page recommender"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "warmrec 0.1.0");

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Train a model from a usage log");
  train_cmd->add_option("--log", train.log, "Access log (CLF) or session CSV")->required();
  train_cmd->add_option("--sitemap", train.sitemap, "Site map JSON");
  train_cmd->add_option("--docs", train.docs, "Directory of page texts or JSON page -> text");
  train_cmd->add_option("--config", train.config, "JSON config; overrides the flags below");
  train_cmd->add_option("--out", train.out, "Model output path")->required();
  train_cmd->add_option("--session-timeout", train.timeout, "Seconds of inactivity ending a session");
  train_cmd->add_option("--min-wsupport", train.min_wsupport, "Minimum weighted support");
  train_cmd->add_option("--min-wconf", train.min_wconf, "Minimum weighted confidence");
  train_cmd->add_option("--max-itemset-size", train.max_itemset_size, "Largest itemset mined");
  train_cmd->add_option("--cluster-threshold", train.cluster_threshold, "Cosine merge threshold");
  train_cmd->add_option("--top-n", train.top_n, "Default list length");

  std::string model_path, session;
  std::size_t n = 0;
  auto* rec_cmd = app.add_subcommand("recommend", "Recommend pages for a session");
  rec_cmd->add_option("--model", model_path, "Model JSON")->required();
  rec_cmd->add_option("--session", session, "Comma-separated visited pages")->required();
  auto* n_opt = rec_cmd->add_option("--n", n, "List length (default: model top_n)");

  EvaluateArgs ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "Precision and coverage on a test log");
  eval_cmd->add_option("--model", ev.model, "Model JSON")->required();
  eval_cmd->add_option("--test-log", ev.test_log, "Test log (CLF or session CSV)")->required();
  eval_cmd->add_option("--n", ev.n, "Comma-separated list lengths, e.g. 1,2,3")->required();
  eval_cmd->add_option("--out", ev.out, "CSV output path (default stdout)");
  eval_cmd->add_option("--detail", ev.detail, "Per-case JSON output path");
  eval_cmd->add_option("--prefix-fraction", ev.prefix_fraction, "Observed share of each session");
  eval_cmd->add_flag("--rules-only", ev.rules_only, "Evaluate the rule-only baseline");

  std::string serve_model, host = "127.0.0.1";
  int port = 8080;
  auto* serve_cmd = app.add_subcommand("serve", "Serve recommendations over HTTP");
  serve_cmd->add_option("--model", serve_model, "Model JSON")->required();
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_option("--host", host, "Bind address");

  std::string spec_path, out_dir;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic corpus");
  synth_cmd->add_option("--spec", spec_path, "Generator spec JSON")->required();
  synth_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train, out, err);
    if (*rec_cmd) {
      if (n_opt->count() == 0) n = load_model(model_path).params.top_n;
      return cmd_recommend(model_path, session, n, out, err);
    }
    if (*eval_cmd) return cmd_evaluate(ev, out, err);
    if (*serve_cmd) return cmd_serve(serve_model, host, port, out);
    if (*synth_cmd) return cmd_synth(spec_path, out_dir, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace warmrec::app
