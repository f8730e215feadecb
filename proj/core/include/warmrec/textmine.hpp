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

// TF-IDF text relevance of candidate pages.
//
//   tf(d, t) = count(t, d) / max_t' count(t', d)
//   idf(t)   = ln(N / df(t))

#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warmrec/types.hpp"

namespace warmrec {

/// Term -> occurrence count.
using TermCounts = std::map<std::string, std::size_t>;
using TermSet = std::set<std::string>;

const TermSet& default_stopwords();

/// Lowercases, splits on non-alphanumeric bytes, drops tokens shorter than
/// two characters and stopwords.
TermCounts tokenize(std::string_view text, const TermSet& stopwords = default_stopwords());

struct DocumentCorpus {
  std::map<Page, TermCounts> docs;

  std::size_t doc_count() const { return docs.size(); }
  TermSet vocabulary() const;
  bool operator==(const DocumentCorpus&) const = default;
};

DocumentCorpus corpus_from_texts(const std::map<Page, std::string>& texts,
                                 const TermSet& stopwords = default_stopwords());

/// Raw page texts from a JSON object (page -> text) or a directory of files
/// named by URL-encoded page identifier.
std::map<Page, std::string> load_texts(const std::string& path);

std::string url_encode(std::string_view raw);
std::string url_decode(std::string_view encoded);

class TfIdfIndex {
 public:
  TfIdfIndex() = default;

  double tf(const Page& page, const std::string& term) const;
  double idf(const std::string& term) const;
  bool has_document(const Page& page) const { return corpus_.docs.contains(page); }
  std::size_t doc_count() const { return corpus_.doc_count(); }
  bool empty() const { return corpus_.docs.empty(); }

  /// Token counts of an indexed page, nullptr otherwise.
  const TermCounts* terms_of(const Page& page) const;
  const DocumentCorpus& corpus() const { return corpus_; }
  const std::map<std::string, double>& idf_table() const { return idf_; }

  bool operator==(const TfIdfIndex& other) const { return corpus_ == other.corpus_; }

 private:
  friend TfIdfIndex build_index(const DocumentCorpus& corpus);

  DocumentCorpus corpus_;
  std::map<Page, std::map<std::string, double>> tf_;
  std::map<std::string, double> idf_;
};

/// An empty corpus yields an empty index.
TfIdfIndex build_index(const DocumentCorpus& corpus);

/// sum_t tf(page, t) * idf(t) * query_count(t), before batch normalization.
/// Unindexed pages score 0.
double raw_tfidf_score(const TfIdfIndex& index, const Page& page, const TermCounts& query);

/// Raw scores of `pages` divided by their batch maximum (all 0 if the
/// maximum is 0). Output is aligned with `pages`.
std::vector<double> tfidf_scores(const TfIdfIndex& index, std::span<const Page> pages,
                                 const TermCounts& query);

}  // namespace warmrec
