// Copyright 2026 the peergrade authors
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

#pragma once

// Social-ownership-assessment network: n users and m items joined by three
// weighted relations, plus the row-normalized propagation operator built
// from them.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace peergrade {

/// One stored matrix entry. For the social relation both endpoints are
/// users; for ownership and assessment `row` is a user and `col` an item.
struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  double weight = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

/// Input record keyed by external string ids.
struct Triple {
  std::string first;
  std::string second;
  double weight = 0.0;
};

/// Immutable after construction. Relations are stored as entry lists sorted
/// by (row, col). A stored entry is a structural nonzero even when its
/// weight is 0: an explicit grade of 0 differs from a missing grade.
struct SoanGraph {
  std::size_t n = 0;  // users
  std::size_t m = 0;  // items
  std::vector<std::string> user_ids;
  std::vector<std::string> item_ids;
  std::vector<Entry> social;      // symmetric; both directions stored
  std::vector<Entry> ownership;   // user x item
  std::vector<Entry> assessment;  // user x item

  std::size_t social_edge_count() const { return social.size() / 2; }

  /// Index of an item id, or throws ValidationError.
  std::size_t item_index(const std::string& id) const;
  std::size_t user_index(const std::string& id) const;

  friend bool operator==(const SoanGraph&, const SoanGraph&) = default;
};

/// Builds a graph from string-keyed records. Ids are mapped to 0-based
/// indices in lexicographic order. `declared_users` / `declared_items` add
/// ids that appear in no record.
SoanGraph build_graph(std::span<const Triple> assessments, std::span<const Triple> ownerships,
                      std::span<const Triple> social,
                      std::span<const std::string> declared_users = {},
                      std::span<const std::string> declared_items = {});

/// Builds a graph from index-keyed entries with generated ids ("u007",
/// "i042", zero-padded so lexicographic order equals index order). Social
/// entries are given once per unordered pair.
SoanGraph graph_from_indices(std::size_t n, std::size_t m, std::vector<Entry> social_pairs,
                             std::vector<Entry> ownership, std::vector<Entry> assessment);

/// Zero-padded synthetic id: make_id('u', 7, 500) == "u007".
std::string make_id(char prefix, std::size_t index, std::size_t count);

struct ValidationReport {
  enum class Severity { kWarning, kFatal };
  struct Issue {
    Severity severity;
    std::string message;
  };
  std::vector<Issue> issues;

  bool empty() const { return issues.empty(); }
  bool fatal() const;
  std::string to_string() const;
};

/// Checks structural invariants (fatal) and isolation (warnings).
ValidationReport validate(const SoanGraph& graph);

/// Compressed sparse rows; columns ascending within each row.
struct CsrMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col;
  std::vector<double> val;

  std::size_t nnz() const { return val.size(); }
  CsrMatrix transposed() const;
  std::vector<double> to_dense() const;  // row-major rows x cols
};

/// D^-1 M with M = [[S, P], [P^T, 0]] + I and P = O + A. Users occupy rows
/// 0..n-1, item i occupies row n+i. D counts structural nonzeros per row.
struct PropagationMatrix {
  std::size_t n = 0;
  std::size_t m = 0;
  CsrMatrix normalized;             // N = D^-1 M
  CsrMatrix normalized_transposed;  // N^T, for backpropagation
  std::vector<double> degrees;

  std::size_t nodes() const { return n + m; }
  std::size_t item_row(std::size_t item) const { return n + item; }
};

/// Throws ValidationError when validate() reports a fatal issue.
PropagationMatrix propagation_matrix(const SoanGraph& graph);

/// True valuation per item; entries with known[i] == false are unused.
struct GroundTruth {
  std::vector<double> values;
  std::vector<bool> known;

  static GroundTruth all_known(std::vector<double> values);
  std::vector<std::size_t> known_items() const;

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

struct Dataset {
  SoanGraph graph;
  GroundTruth truth;

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

/// Train/test partition over item indices; both sorted and disjoint.
struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  friend bool operator==(const Split&, const Split&) = default;
};

/// Throws ValidationError if the split overlaps or references unknown truth.
void check_split(const Split& split, const GroundTruth& truth);

}  // namespace peergrade
