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

#include "warmrec/textmine.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "warmrec/logparse.hpp"

namespace warmrec {

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

const TermSet& default_stopwords() {
  static const TermSet kStopwords = {
      "about", "an",   "and",  "are",  "as",    "at",    "be",   "by",    "for",
      "from",  "has",  "have", "he",   "in",    "is",    "it",   "its",   "of",
      "on",    "or",   "that", "the",  "their", "there", "they", "this",  "to",
      "was",   "we",   "were", "will", "with",  "you",   "your", "which", "but",
      "not",   "can",  "if",   "into", "so",    "than",  "then", "these", "those"};
  return kStopwords;
}

TermCounts tokenize(std::string_view text, const TermSet& stopwords) {
  TermCounts out;
  std::string token;
  auto flush = [&] {
    if (token.size() >= 2 && !stopwords.contains(token)) ++out[token];
    token.clear();
  };
  for (char c : text) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc)) {
      token.push_back(static_cast<char>(std::tolower(uc)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

TermSet DocumentCorpus::vocabulary() const {
  TermSet vocab;
  for (const auto& [_, counts] : docs) {
    for (const auto& [term, _c] : counts) vocab.insert(term);
  }
  return vocab;
}

DocumentCorpus corpus_from_texts(const std::map<Page, std::string>& texts,
                                 const TermSet& stopwords) {
  DocumentCorpus corpus;
  for (const auto& [page, text] : texts) corpus.docs[page] = tokenize(text, stopwords);
  return corpus;
}

std::string url_encode(std::string_view raw) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char c : raw) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isalnum(uc) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(c);
    } else {
      out.push_back('%');
      out.push_back(kHex[uc >> 4]);
      out.push_back(kHex[uc & 0xF]);
    }
  }
  return out;
}

std::string url_decode(std::string_view encoded) {
  std::string out;
  for (std::size_t i = 0; i < encoded.size(); ++i) {
    if (encoded[i] == '%' && i + 2 < encoded.size()) {
      int hi = hex_value(encoded[i + 1]);
      int lo = hex_value(encoded[i + 2]);
      if (hi >= 0 && lo >= 0) {
        out.push_back(static_cast<char>(hi * 16 + lo));
        i += 2;
        continue;
      }
    }
    out.push_back(encoded[i]);
  }
  return out;
}

std::map<Page, std::string> load_texts(const std::string& path) {
  namespace fs = std::filesystem;
  std::error_code ec;
  std::map<Page, std::string> texts;
  if (fs::is_directory(path, ec)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path, ec)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    if (ec) throw IoError("cannot list " + path);
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      Page page = normalize_url(url_decode(f.filename().string()));
      if (page.empty()) continue;
      texts[page] = slurp(f);
    }
    return texts;
  }
  auto doc = nlohmann::json::parse(slurp(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw DataError("corpus " + path + ": expected a JSON object of page -> text");
  }
  for (const auto& [raw, text] : doc.items()) {
    if (!text.is_string()) throw DataError("corpus " + path + ": text of " + raw + " is not a string");
    Page page = normalize_url(raw);
    if (!page.empty()) texts[page] += text.get<std::string>();
  }
  return texts;
}

double TfIdfIndex::tf(const Page& page, const std::string& term) const {
  auto doc = tf_.find(page);
  if (doc == tf_.end()) return 0.0;
  auto it = doc->second.find(term);
  return it == doc->second.end() ? 0.0 : it->second;
}

double TfIdfIndex::idf(const std::string& term) const {
  auto it = idf_.find(term);
  return it == idf_.end() ? 0.0 : it->second;
}

const TermCounts* TfIdfIndex::terms_of(const Page& page) const {
  auto it = corpus_.docs.find(page);
  return it == corpus_.docs.end() ? nullptr : &it->second;
}

TfIdfIndex build_index(const DocumentCorpus& corpus) {
  TfIdfIndex index;
  index.corpus_ = corpus;
  std::map<std::string, std::size_t> df;
  for (const auto& [page, counts] : corpus.docs) {
    auto& row = index.tf_[page];
    std::size_t max_count = 0;
    for (const auto& [_, c] : counts) max_count = std::max(max_count, c);
    for (const auto& [term, c] : counts) {
      row[term] = static_cast<double>(c) / static_cast<double>(max_count);
      ++df[term];
    }
  }
  const auto n = static_cast<double>(corpus.doc_count());
  for (const auto& [term, count] : df) index.idf_[term] = std::log(n / static_cast<double>(count));
  return index;
}

double raw_tfidf_score(const TfIdfIndex& index, const Page& page, const TermCounts& query) {
  double score = 0.0;
  for (const auto& [term, count] : query) {
    score += index.tf(page, term) * index.idf(term) * static_cast<double>(count);
  }
  return score;
}

std::vector<double> tfidf_scores(const TfIdfIndex& index, std::span<const Page> pages,
                                 const TermCounts& query) {
  std::vector<double> out;
  out.reserve(pages.size());
  double max_score = 0.0;
  for (const auto& p : pages) {
    out.push_back(raw_tfidf_score(index, p, query));
    max_score = std::max(max_score, out.back());
  }
  for (auto& s : out) s = max_score > 0.0 ? s / max_score : 0.0;
  return out;
}

}  // namespace warmrec
