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

// Access-log parsing, sessionization and raw per-page statistics.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warmrec/types.hpp"

namespace warmrec {

inline constexpr double kDefaultSessionTimeoutSeconds = 1800.0;

/// One access-log record after URL normalization.
struct RawLogEntry {
  std::string client_key;  // remote host + '|' + user agent
  Page page;
  std::int64_t timestamp = 0;  // seconds since epoch, UTC
  std::optional<std::int64_t> bytes;
  int status = 0;
  std::string user_agent;

  bool operator==(const RawLogEntry&) const = default;
};

/// Raised by parse_clf_line. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line_number);
  std::size_t line_number() const { return line_number_; }

 private:
  std::size_t line_number_;
};

struct Visit {
  Page page;
  double timestamp = 0.0;
  double dwell_seconds = 0.0;

  bool operator==(const Visit&) const = default;
};

struct Session {
  std::string session_id;
  std::vector<Visit> visits;  // non-empty, timestamp-nondecreasing

  PageSet pages() const;
  bool operator==(const Session&) const = default;
};

struct SessionLog {
  std::vector<Session> sessions;
  PageSet page_universe;

  std::size_t visit_count() const;
  bool operator==(const SessionLog&) const = default;
};

/// Site structure: page sizes and hyperlinks.
struct SiteMap {
  PageSet pages;
  std::map<Page, std::int64_t> size_bytes;  // >= 1 for every page
  std::map<Page, PageSet> outlinks;         // targets are members of `pages`

  std::int64_t size_of(const Page& page) const;
  const PageSet& links_from(const Page& page) const;

  /// Adds `page` with the given size if absent (size clamped to >= 1).
  void add_page(const Page& page, std::int64_t size = 1);
  /// Adds both endpoints if needed. Self links are ignored.
  void add_link(const Page& from, const Page& to);

  bool operator==(const SiteMap&) const = default;
};

/// Strips query string and fragment and collapses trailing slashes
/// ("/a/b/" -> "/a/b", "/" stays "/"). Returns an empty string when nothing
/// remains.
Page normalize_url(std::string_view raw);

/// Parses one Common Log Format record. The two trailing quoted fields of
/// the Combined format (referer, user agent) are accepted when present.
RawLogEntry parse_clf_line(std::string_view line, std::size_t line_number = 0);

/// Filter applied between parsing and sessionization.
struct LogFilter {
  int min_status = 200;
  int max_status = 299;
  std::vector<std::string> excluded_suffixes = {
      ".png", ".jpg", ".jpeg", ".gif", ".css", ".js", ".ico", ".svg",
      ".woff", ".woff2", ".ttf", ".map"};
  std::vector<std::string> user_agent_denylist = {"bot", "crawler", "spider",
                                                  "slurp"};

  bool accepts(const RawLogEntry& entry) const;
};

struct ClfReadResult {
  std::vector<RawLogEntry> entries;
  std::size_t malformed_lines = 0;
  std::size_t filtered_out = 0;
};

/// Reads a CLF stream, skipping and counting malformed lines.
ClfReadResult read_clf(std::istream& in, const LogFilter& filter = {});

/// Groups entries into sessions per client key. A gap strictly greater than
/// `timeout_seconds` starts a new session. Dwell of a visit is the gap to the
/// next visit; the last visit gets the mean dwell of the others (0 for a
/// single-visit session). Session ids are "s1", "s2", ... ordered by
/// (start time, client key).
SessionLog sessionize(std::span<const RawLogEntry> entries,
                      double timeout_seconds = kDefaultSessionTimeoutSeconds);

/// Recomputes dwell times of a session from its timestamps using the same
/// rule as sessionize.
void recompute_dwell(Session& session);

/// Reads the session CSV format `session_id,page,timestamp[,dwell_seconds]`.
/// Sessions keep first-appearance order; visits are stably sorted by
/// timestamp. A session with any missing dwell value gets all its dwell
/// values recomputed.
SessionLog read_session_csv(std::istream& in);
void write_session_csv(std::ostream& out, const SessionLog& log);

/// Loads a session log from a file. Files ending in ".csv" use the session
/// CSV format; anything else is parsed as CLF and sessionized.
SessionLog load_session_log(const std::string& path, double timeout_seconds,
                            const LogFilter& filter = {});

SiteMap parse_sitemap_json(std::string_view json_text);
std::string sitemap_to_json(const SiteMap& site);
SiteMap load_sitemap(const std::string& path);

struct PageStats {
  double total_dwell_seconds = 0.0;
  std::size_t visit_count = 0;
  std::size_t indegree = 1;  // never 0
  std::int64_t size_bytes = 1;

  bool operator==(const PageStats&) const = default;
};

/// Per-page statistics over log pages and site pages. Pages missing from the
/// site get size 1; pages without inbound links get indegree 1.
std::map<Page, PageStats> page_stats(const SessionLog& log, const SiteMap& site);

}  // namespace warmrec
