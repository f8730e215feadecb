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

#include "warmrec/logparse.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "json.hpp"

namespace warmrec {

namespace {

using json = nlohmann::json;

bool ends_with_ci(std::string_view s, std::string_view suffix) {
  if (suffix.size() > s.size()) return false;
  auto tail = s.substr(s.size() - suffix.size());
  return std::equal(tail.begin(), tail.end(), suffix.begin(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) ==
           std::tolower(static_cast<unsigned char>(b));
  });
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return true;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                        [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it != haystack.end();
}

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Cursor over a CLF line.
class LineScanner {
 public:
  LineScanner(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  void skip_spaces() {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
  }

  bool at_end() {
    skip_spaces();
    return pos_ >= line_.size();
  }

  std::string_view token(const char* field) {
    skip_spaces();
    if (pos_ >= line_.size()) fail(std::string("missing ") + field);
    std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
    return line_.substr(start, pos_ - start);
  }

  std::string_view bracketed(const char* field) {
    skip_spaces();
    if (pos_ >= line_.size() || line_[pos_] != '[') fail(std::string("missing ") + field);
    std::size_t close = line_.find(']', pos_);
    if (close == std::string_view::npos) fail(std::string("unterminated ") + field);
    auto out = line_.substr(pos_ + 1, close - pos_ - 1);
    pos_ = close + 1;
    return out;
  }

  std::string quoted(const char* field) {
    skip_spaces();
    if (pos_ >= line_.size() || line_[pos_] != '"') fail(std::string("missing ") + field);
    ++pos_;
    std::string out;
    while (pos_ < line_.size()) {
      char c = line_[pos_++];
      if (c == '\\' && pos_ < line_.size()) {
        out.push_back(line_[pos_++]);
      } else if (c == '"') {
        return out;
      } else {
        out.push_back(c);
      }
    }
    fail(std::string("unterminated ") + field);
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_number_);
  }

 private:
  std::string_view line_;
  std::size_t line_number_;
  std::size_t pos_ = 0;
};

int month_index(std::string_view mon) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
  for (std::size_t i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == mon) return static_cast<int>(i) + 1;
  }
  return 0;
}

// "10/Oct/2000:13:55:36 -0700"
std::optional<std::int64_t> parse_clf_time(std::string_view s) {
  if (s.size() < 20) return std::nullopt;
  int day = 0, year = 0, hh = 0, mm = 0, ss = 0;
  if (s[2] != '/' || s[6] != '/' || s[11] != ':' || s[14] != ':' || s[17] != ':') {
    return std::nullopt;
  }
  if (!parse_int(s.substr(0, 2), day) || !parse_int(s.substr(7, 4), year) ||
      !parse_int(s.substr(12, 2), hh) || !parse_int(s.substr(15, 2), mm) ||
      !parse_int(s.substr(18, 2), ss)) {
    return std::nullopt;
  }
  int month = month_index(s.substr(3, 3));
  if (month == 0 || hh > 23 || mm > 59 || ss > 60) return std::nullopt;

  std::int64_t offset_seconds = 0;
  auto rest = s.substr(20);
  if (!rest.empty()) {
    if (rest.size() != 6 || rest[0] != ' ' || (rest[1] != '+' && rest[1] != '-')) {
      return std::nullopt;
    }
    int oh = 0, om = 0;
    if (!parse_int(rest.substr(2, 2), oh) || !parse_int(rest.substr(4, 2), om)) {
      return std::nullopt;
    }
    offset_seconds = (oh * 3600 + om * 60) * (rest[1] == '-' ? -1 : 1);
  }

  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                     std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok()) return std::nullopt;
  std::int64_t days = sys_days{ymd}.time_since_epoch().count();
  std::int64_t local = days * 86400 + hh * 3600 + mm * 60 + ss;
  return local - offset_seconds;
}

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> fields(1);
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_quotes) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back().push_back('"');
        ++i;
      } else if (c == '"') {
        in_quotes = false;
      } else {
        fields.back().push_back(c);
      }
    } else if (c == '"') {
      in_quotes = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back().push_back(c);
    }
  }
  return fields;
}

std::string csv_escape(std::string_view field) {
  if (field.find_first_of(",\"\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line_number)
    : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + what : what),
      line_number_(line_number) {}

PageSet Session::pages() const {
  PageSet out;
  for (const auto& v : visits) out.insert(v.page);
  return out;
}

std::size_t SessionLog::visit_count() const {
  return std::accumulate(sessions.begin(), sessions.end(), std::size_t{0},
                         [](std::size_t acc, const Session& s) { return acc + s.visits.size(); });
}

std::int64_t SiteMap::size_of(const Page& page) const {
  auto it = size_bytes.find(page);
  return it == size_bytes.end() ? 1 : it->second;
}

const PageSet& SiteMap::links_from(const Page& page) const {
  static const PageSet kEmpty;
  auto it = outlinks.find(page);
  return it == outlinks.end() ? kEmpty : it->second;
}

void SiteMap::add_page(const Page& page, std::int64_t size) {
  if (pages.insert(page).second) {
    size_bytes[page] = std::max<std::int64_t>(size, 1);
  }
}

void SiteMap::add_link(const Page& from, const Page& to) {
  add_page(from);
  add_page(to);
  if (from != to) outlinks[from].insert(to);
}

Page normalize_url(std::string_view raw) {
  // Absolute-form request targets: drop scheme and authority.
  if (auto scheme = raw.find("://"); scheme != std::string_view::npos &&
                                     raw.find('/') > scheme) {
    auto path_start = raw.find('/', scheme + 3);
    raw = path_start == std::string_view::npos ? std::string_view("/") : raw.substr(path_start);
  }
  auto cut = raw.find_first_of("?#");
  if (cut != std::string_view::npos) raw = raw.substr(0, cut);
  while (raw.size() > 1 && raw.back() == '/') raw.remove_suffix(1);
  return Page(raw);
}

RawLogEntry parse_clf_line(std::string_view line, std::size_t line_number) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.remove_suffix(1);
  LineScanner scan(line, line_number);

  RawLogEntry entry;
  auto host = scan.token("remote host");
  scan.token("ident");
  scan.token("authuser");
  auto time_field = scan.bracketed("timestamp");
  auto ts = parse_clf_time(time_field);
  if (!ts) scan.fail("bad timestamp '" + std::string(time_field) + "'");
  if (*ts < 0) scan.fail("timestamp before epoch");
  entry.timestamp = *ts;

  std::string request = scan.quoted("request");
  std::istringstream req(request);
  std::string method, target;
  req >> method >> target;
  if (target.empty()) scan.fail("request has no target: '" + request + "'");
  entry.page = normalize_url(target);
  if (entry.page.empty()) scan.fail("empty page after normalization");

  auto status = scan.token("status");
  if (!parse_int(status, entry.status)) scan.fail("bad status '" + std::string(status) + "'");

  auto bytes = scan.token("bytes");
  if (bytes != "-") {
    std::int64_t b = 0;
    if (!parse_int(bytes, b) || b < 0) scan.fail("bad byte count '" + std::string(bytes) + "'");
    entry.bytes = b;
  }

  if (!scan.at_end()) {
    scan.quoted("referer");
    if (!scan.at_end()) entry.user_agent = scan.quoted("user agent");
  }
  entry.client_key = std::string(host) + "|" + entry.user_agent;
  return entry;
}

bool LogFilter::accepts(const RawLogEntry& entry) const {
  if (entry.status < min_status || entry.status > max_status) return false;
  for (const auto& suffix : excluded_suffixes) {
    if (ends_with_ci(entry.page, suffix)) return false;
  }
  for (const auto& agent : user_agent_denylist) {
    if (!agent.empty() && contains_ci(entry.user_agent, agent)) return false;
  }
  return true;
}

ClfReadResult read_clf(std::istream& in, const LogFilter& filter) {
  ClfReadResult out;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    try {
      auto entry = parse_clf_line(line, line_number);
      if (filter.accepts(entry)) {
        out.entries.push_back(std::move(entry));
      } else {
        ++out.filtered_out;
      }
    } catch (const ParseError&) {
      ++out.malformed_lines;
    }
  }
  return out;
}

void recompute_dwell(Session& session) {
  auto& visits = session.visits;
  if (visits.empty()) return;
  if (visits.size() == 1) {
    visits.front().dwell_seconds = 0.0;
    return;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < visits.size(); ++i) {
    visits[i].dwell_seconds = visits[i + 1].timestamp - visits[i].timestamp;
    sum += visits[i].dwell_seconds;
  }
  visits.back().dwell_seconds = sum / static_cast<double>(visits.size() - 1);
}

SessionLog sessionize(std::span<const RawLogEntry> entries, double timeout_seconds) {
  if (!(timeout_seconds > 0.0)) throw ConfigError("session timeout must be positive");

  std::map<std::string, std::vector<const RawLogEntry*>> by_client;
  for (const auto& e : entries) by_client[e.client_key].push_back(&e);

  struct Pending {
    double start;
    std::string client;
    std::size_t ordinal;
    Session session;
  };
  std::vector<Pending> pending;

  for (auto& [client, list] : by_client) {
    std::stable_sort(list.begin(), list.end(), [](const RawLogEntry* a, const RawLogEntry* b) {
      return a->timestamp < b->timestamp;
    });
    std::size_t ordinal = 0;
    Session current;
    for (const RawLogEntry* e : list) {
      auto t = static_cast<double>(e->timestamp);
      if (!current.visits.empty() && t - current.visits.back().timestamp > timeout_seconds) {
        pending.push_back({current.visits.front().timestamp, client, ordinal++, std::move(current)});
        current = Session{};
      }
      current.visits.push_back({e->page, t, 0.0});
    }
    if (!current.visits.empty()) {
      pending.push_back({current.visits.front().timestamp, client, ordinal++, std::move(current)});
    }
  }

  std::sort(pending.begin(), pending.end(), [](const Pending& a, const Pending& b) {
    return std::tie(a.start, a.client, a.ordinal) < std::tie(b.start, b.client, b.ordinal);
  });

  SessionLog log;
  log.sessions.reserve(pending.size());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Session s = std::move(pending[i].session);
    s.session_id = "s" + std::to_string(i + 1);
    recompute_dwell(s);
    for (const auto& v : s.visits) log.page_universe.insert(v.page);
    log.sessions.push_back(std::move(s));
  }
  return log;
}

SessionLog read_session_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) return {};
  auto header = split_csv(line);
  int col_session = -1, col_page = -1, col_time = -1, col_dwell = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    auto name = trim(header[i]);
    if (name == "session_id") col_session = static_cast<int>(i);
    else if (name == "page") col_page = static_cast<int>(i);
    else if (name == "timestamp") col_time = static_cast<int>(i);
    else if (name == "dwell_seconds") col_dwell = static_cast<int>(i);
  }
  if (col_session < 0 || col_page < 0 || col_time < 0) {
    throw ParseError("session CSV header must contain session_id,page,timestamp", 1);
  }

  std::vector<Session> sessions;
  std::vector<bool> needs_dwell;
  std::unordered_map<std::string, std::size_t> index;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    auto field = [&](int col) -> std::string_view {
      return col >= 0 && static_cast<std::size_t>(col) < fields.size() ? trim(fields[col])
                                                                       : std::string_view{};
    };
    std::string sid(field(col_session));
    Page page = normalize_url(field(col_page));
    double ts = 0.0;
    if (sid.empty()) throw ParseError("empty session_id", line_number);
    if (page.empty()) throw ParseError("empty page", line_number);
    if (!parse_double(field(col_time), ts) || ts < 0.0) {
      throw ParseError("bad timestamp '" + std::string(field(col_time)) + "'", line_number);
    }
    double dwell = 0.0;
    bool has_dwell = false;
    if (auto d = field(col_dwell); !d.empty()) {
      if (!parse_double(d, dwell) || dwell < 0.0) {
        throw ParseError("bad dwell_seconds '" + std::string(d) + "'", line_number);
      }
      has_dwell = true;
    }
    auto [it, inserted] = index.emplace(sid, sessions.size());
    if (inserted) {
      sessions.push_back(Session{sid, {}});
      needs_dwell.push_back(false);
    }
    sessions[it->second].visits.push_back({std::move(page), ts, dwell});
    if (!has_dwell) needs_dwell[it->second] = true;
  }

  SessionLog log;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    auto& s = sessions[i];
    std::stable_sort(s.visits.begin(), s.visits.end(),
                     [](const Visit& a, const Visit& b) { return a.timestamp < b.timestamp; });
    if (needs_dwell[i]) recompute_dwell(s);
    for (const auto& v : s.visits) log.page_universe.insert(v.page);
    log.sessions.push_back(std::move(s));
  }
  return log;
}

void write_session_csv(std::ostream& out, const SessionLog& log) {
  out << "session_id,page,timestamp,dwell_seconds\n";
  for (const auto& s : log.sessions) {
    for (const auto& v : s.visits) {
      out << csv_escape(s.session_id) << ',' << csv_escape(v.page) << ','
          << json(v.timestamp).dump() << ',' << json(v.dwell_seconds).dump() << '\n';
    }
  }
}

SessionLog load_session_log(const std::string& path, double timeout_seconds,
                            const LogFilter& filter) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open log " + path);
  if (ends_with_ci(path, ".csv")) return read_session_csv(in);
  auto parsed = read_clf(in, filter);
  return sessionize(parsed.entries, timeout_seconds);
}

SiteMap parse_sitemap_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("sitemap: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pages") || !doc["pages"].is_object()) {
    throw DataError("sitemap: expected object with a \"pages\" object");
  }
  SiteMap site;
  for (const auto& [raw, info] : doc["pages"].items()) {
    Page page = normalize_url(raw);
    if (page.empty()) throw DataError("sitemap: empty page identifier");
    std::int64_t size = 1;
    if (info.contains("size")) {
      if (!info["size"].is_number_integer() || info["size"].get<std::int64_t>() < 1) {
        throw DataError("sitemap: size of " + page + " must be a positive integer");
      }
      size = info["size"].get<std::int64_t>();
    }
    site.pages.insert(page);
    site.size_bytes[page] = size;
  }
  for (const auto& [raw, info] : doc["pages"].items()) {
    Page page = normalize_url(raw);
    if (!info.contains("outlinks")) continue;
    for (const auto& target : info["outlinks"]) {
      if (!target.is_string()) throw DataError("sitemap: outlinks must be strings");
      Page to = normalize_url(target.get<std::string>());
      if (to.empty()) throw DataError("sitemap: empty outlink from " + page);
      site.add_link(page, to);
    }
  }
  return site;
}

std::string sitemap_to_json(const SiteMap& site) {
  json pages = json::object();
  for (const auto& page : site.pages) {
    json links = json::array();
    for (const auto& to : site.links_from(page)) links.push_back(to);
    pages[page] = {{"size", site.size_of(page)}, {"outlinks", std::move(links)}};
  }
  return json{{"pages", std::move(pages)}}.dump(2);
}

SiteMap load_sitemap(const std::string& path) { return parse_sitemap_json(read_file(path)); }

std::map<Page, PageStats> page_stats(const SessionLog& log, const SiteMap& site) {
  std::map<Page, PageStats> stats;
  for (const auto& page : site.pages) stats[page];
  for (const auto& page : log.page_universe) stats[page];
  for (const auto& s : log.sessions) {
    for (const auto& v : s.visits) {
      auto& st = stats[v.page];
      st.total_dwell_seconds += v.dwell_seconds;
      ++st.visit_count;
    }
  }
  std::map<Page, std::size_t> inbound;
  for (const auto& [from, targets] : site.outlinks) {
    for (const auto& to : targets) ++inbound[to];
  }
  for (auto& [page, st] : stats) {
    st.size_bytes = site.size_of(page);
    auto it = inbound.find(page);
    st.indegree = (it == inbound.end() || it->second == 0) ? 1 : it->second;
  }
  return stats;
}

}  // namespace warmrec
