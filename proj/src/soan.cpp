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

#include "peergrade/soan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "peergrade/errors.hpp"

namespace peergrade {
namespace {

bool unit_weight(double w) { return std::isfinite(w) && w >= 0.0 && w <= 1.0; }

std::string describe(const char* relation, const Triple& t) {
  std::ostringstream os;
  os.precision(17);
  os << relation << " (" << t.first << ", " << t.second << ", " << t.weight << ")";
  return os.str();
}

bool entry_less(const Entry& a, const Entry& b) {
  return std::tie(a.row, a.col) < std::tie(b.row, b.col);
}

void sort_and_reject_duplicates(std::vector<Entry>& entries, const char* relation,
                                const std::vector<std::string>& row_ids,
                                const std::vector<std::string>& col_ids) {
  std::sort(entries.begin(), entries.end(), entry_less);
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k - 1].row == entries[k].row && entries[k - 1].col == entries[k].col) {
      throw DuplicateEntryError(std::string("duplicate ") + relation + " entry (" +
                                row_ids[entries[k].row] + ", " + col_ids[entries[k].col] + ")");
    }
  }
}

SoanGraph assemble(std::vector<std::string> user_ids, std::vector<std::string> item_ids,
                   std::vector<Entry> social_pairs, std::vector<Entry> ownership,
                   std::vector<Entry> assessment) {
  SoanGraph g;
  g.n = user_ids.size();
  g.m = item_ids.size();
  g.user_ids = std::move(user_ids);
  g.item_ids = std::move(item_ids);

  for (auto& e : social_pairs) {
    if (e.row >= g.n || e.col >= g.n) throw ValidationError("social entry index out of range");
    if (e.row == e.col) {
      throw ValidationError("social self-edge on user " + g.user_ids[e.row]);
    }
    if (!unit_weight(e.weight)) {
      throw ValidationError("social weight outside [0,1] for (" + g.user_ids[e.row] + ", " +
                            g.user_ids[e.col] + ")");
    }
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  sort_and_reject_duplicates(social_pairs, "social", g.user_ids, g.user_ids);
  g.social.reserve(2 * social_pairs.size());
  for (const auto& e : social_pairs) {
    g.social.push_back(e);
    g.social.push_back({e.col, e.row, e.weight});
  }
  std::sort(g.social.begin(), g.social.end(), entry_less);

  for (auto* rel : {&ownership, &assessment}) {
    for (const auto& e : *rel) {
      if (e.row >= g.n || e.col >= g.m) throw ValidationError("user-item entry index out of range");
      if (!unit_weight(e.weight)) {
        throw ValidationError("user-item weight outside [0,1] for (" + g.user_ids[e.row] + ", " +
                              g.item_ids[e.col] + ")");
      }
    }
  }
  sort_and_reject_duplicates(ownership, "ownership", g.user_ids, g.item_ids);
  sort_and_reject_duplicates(assessment, "assessment", g.user_ids, g.item_ids);
  g.ownership = std::move(ownership);
  g.assessment = std::move(assessment);
  return g;
}

std::size_t index_of(const std::vector<std::string>& sorted_ids, const std::string& id) {
  auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
  if (it == sorted_ids.end() || *it != id) return sorted_ids.size();
  return static_cast<std::size_t>(it - sorted_ids.begin());
}

}  // namespace

std::size_t SoanGraph::item_index(const std::string& id) const {
  const std::size_t k = index_of(item_ids, id);
  if (k == item_ids.size()) throw ValidationError("unknown item '" + id + "'");
  return k;
}

std::size_t SoanGraph::user_index(const std::string& id) const {
  const std::size_t k = index_of(user_ids, id);
  if (k == user_ids.size()) throw ValidationError("unknown user '" + id + "'");
  return k;
}

SoanGraph build_graph(std::span<const Triple> assessments, std::span<const Triple> ownerships,
                      std::span<const Triple> social, std::span<const std::string> declared_users,
                      std::span<const std::string> declared_items) {
  std::set<std::string> users(declared_users.begin(), declared_users.end());
  std::set<std::string> items(declared_items.begin(), declared_items.end());
  for (const auto& t : assessments) {
    if (!unit_weight(t.weight)) {
      throw ValidationError(describe("assessment", t) + ": weight outside [0,1]");
    }
    users.insert(t.first);
    items.insert(t.second);
  }
  for (const auto& t : ownerships) {
    if (!unit_weight(t.weight)) {
      throw ValidationError(describe("ownership", t) + ": weight outside [0,1]");
    }
    users.insert(t.first);
    items.insert(t.second);
  }
  for (const auto& t : social) {
    if (!unit_weight(t.weight)) {
      throw ValidationError(describe("social", t) + ": weight outside [0,1]");
    }
    if (t.first == t.second) throw ValidationError(describe("social", t) + ": self-edge");
    users.insert(t.first);
    users.insert(t.second);
  }

  std::vector<std::string> user_ids(users.begin(), users.end());
  std::vector<std::string> item_ids(items.begin(), items.end());
  auto to_entries = [&](std::span<const Triple> records, const std::vector<std::string>& cols) {
    std::vector<Entry> out;
    out.reserve(records.size());
    for (const auto& t : records) {
      out.push_back({index_of(user_ids, t.first), index_of(cols, t.second), t.weight});
    }
    return out;
  };
  return assemble(user_ids, item_ids, to_entries(social, user_ids),
                  to_entries(ownerships, item_ids), to_entries(assessments, item_ids));
}

std::string make_id(char prefix, std::size_t index, std::size_t count) {
  std::size_t width = 1;
  for (std::size_t v = count > 0 ? count - 1 : 0; v >= 10; v /= 10) ++width;
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(1, prefix) + digits;
}

SoanGraph graph_from_indices(std::size_t n, std::size_t m, std::vector<Entry> social_pairs,
                             std::vector<Entry> ownership, std::vector<Entry> assessment) {
  std::vector<std::string> user_ids(n);
  std::vector<std::string> item_ids(m);
  for (std::size_t u = 0; u < n; ++u) user_ids[u] = make_id('u', u, n);
  for (std::size_t i = 0; i < m; ++i) item_ids[i] = make_id('i', i, m);
  return assemble(std::move(user_ids), std::move(item_ids), std::move(social_pairs),
                  std::move(ownership), std::move(assessment));
}

bool ValidationReport::fatal() const {
  return std::any_of(issues.begin(), issues.end(),
                     [](const Issue& i) { return i.severity == Severity::kFatal; });
}

std::string ValidationReport::to_string() const {
  std::string out;
  for (const auto& issue : issues) {
    out += issue.severity == Severity::kFatal ? "fatal: " : "warning: ";
    out += issue.message;
    out += '\n';
  }
  return out;
}

ValidationReport validate(const SoanGraph& g) {
  ValidationReport report;
  auto fatal = [&](std::string msg) {
    report.issues.push_back({ValidationReport::Severity::kFatal, std::move(msg)});
  };
  auto warn = [&](std::string msg) {
    report.issues.push_back({ValidationReport::Severity::kWarning, std::move(msg)});
  };

  if (g.user_ids.size() != g.n || g.item_ids.size() != g.m) {
    fatal("id table sizes disagree with n=" + std::to_string(g.n) + ", m=" + std::to_string(g.m));
    return report;
  }

  auto check_relation = [&](const std::vector<Entry>& rel, const char* name, std::size_t cols) {
    bool ok = true;
    for (std::size_t k = 0; k < rel.size(); ++k) {
      const Entry& e = rel[k];
      if (e.row >= g.n || e.col >= cols) {
        fatal(std::string(name) + " entry out of range");
        ok = false;
        continue;
      }
      if (!unit_weight(e.weight)) {
        std::ostringstream os;
        os.precision(17);
        os << name << " weight " << e.weight << " outside [0,1] at (" << e.row << ", " << e.col
           << ")";
        fatal(os.str());
      }
      if (k > 0 && !entry_less(rel[k - 1], e)) {
        fatal(std::string(name) + " entries unsorted or duplicated at (" + std::to_string(e.row) +
              ", " + std::to_string(e.col) + ")");
      }
    }
    return ok;
  };
  const bool social_ok = check_relation(g.social, "social", g.n);
  check_relation(g.ownership, "ownership", g.m);
  check_relation(g.assessment, "assessment", g.m);

  if (social_ok) {
    for (const auto& e : g.social) {
      if (e.row == e.col) {
        fatal("social diagonal entry for user " + g.user_ids[e.row]);
        continue;
      }
      const Entry mirror{e.col, e.row, 0.0};
      auto it = std::lower_bound(g.social.begin(), g.social.end(), mirror, entry_less);
      if (it == g.social.end() || it->row != e.col || it->col != e.row ||
          it->weight != e.weight) {
        fatal("social matrix not symmetric at (" + g.user_ids[e.row] + ", " +
              g.user_ids[e.col] + ")");
      }
    }
  }
  if (report.fatal()) return report;

  std::vector<std::size_t> grades(g.m, 0), owners(g.m, 0), user_edges(g.n, 0);
  for (const auto& e : g.assessment) {
    ++grades[e.col];
    ++user_edges[e.row];
  }
  for (const auto& e : g.ownership) {
    ++owners[e.col];
    ++user_edges[e.row];
  }
  for (const auto& e : g.social) ++user_edges[e.row];
  for (std::size_t i = 0; i < g.m; ++i) {
    if (grades[i] == 0 && owners[i] == 0) {
      warn("item '" + g.item_ids[i] + "' is isolated (no assessments, no owners)");
    } else if (grades[i] == 0) {
      warn("item '" + g.item_ids[i] + "' has no assessments");
    }
  }
  for (std::size_t u = 0; u < g.n; ++u) {
    if (user_edges[u] == 0) warn("user '" + g.user_ids[u] + "' has no edges");
  }
  return report;
}

CsrMatrix CsrMatrix::transposed() const {
  CsrMatrix t;
  t.rows = cols;
  t.cols = rows;
  t.row_ptr.assign(cols + 1, 0);
  for (std::size_t c : col) ++t.row_ptr[c + 1];
  for (std::size_t r = 0; r < cols; ++r) t.row_ptr[r + 1] += t.row_ptr[r];
  t.col.resize(nnz());
  t.val.resize(nnz());
  std::vector<std::size_t> cursor(t.row_ptr.begin(), t.row_ptr.end() - 1);
  // Row-major traversal keeps columns ascending in every transposed row.
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) {
      const std::size_t dst = cursor[col[k]]++;
      t.col[dst] = r;
      t.val[dst] = val[k];
    }
  }
  return t;
}

std::vector<double> CsrMatrix::to_dense() const {
  std::vector<double> dense(rows * cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k) dense[r * cols + col[k]] = val[k];
  }
  return dense;
}

PropagationMatrix propagation_matrix(const SoanGraph& g) {
  if (auto report = validate(g); report.fatal()) {
    throw ValidationError("invalid graph:\n" + report.to_string());
  }

  // P = O + A; both inputs are sorted by (user, item), so merge.
  std::vector<Entry> p;
  p.reserve(g.ownership.size() + g.assessment.size());
  std::merge(g.ownership.begin(), g.ownership.end(), g.assessment.begin(), g.assessment.end(),
             std::back_inserter(p), entry_less);
  std::size_t out = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (out > 0 && p[out - 1].row == p[k].row && p[out - 1].col == p[k].col) {
      p[out - 1].weight += p[k].weight;
    } else {
      p[out++] = p[k];
    }
  }
  p.resize(out);

  const std::size_t nodes = g.n + g.m;
  std::vector<Entry> m;
  m.reserve(nodes + g.social.size() + 2 * p.size());
  for (std::size_t r = 0; r < nodes; ++r) m.push_back({r, r, 1.0});
  m.insert(m.end(), g.social.begin(), g.social.end());
  for (const auto& e : p) {
    m.push_back({e.row, g.n + e.col, e.weight});
    m.push_back({g.n + e.col, e.row, e.weight});
  }
  std::sort(m.begin(), m.end(), entry_less);

  PropagationMatrix prop;
  prop.n = g.n;
  prop.m = g.m;
  prop.degrees.assign(nodes, 0.0);
  CsrMatrix& csr = prop.normalized;
  csr.rows = csr.cols = nodes;
  csr.row_ptr.assign(nodes + 1, 0);
  csr.col.reserve(m.size());
  csr.val.reserve(m.size());
  for (const auto& e : m) ++csr.row_ptr[e.row + 1];
  for (std::size_t r = 0; r < nodes; ++r) {
    prop.degrees[r] = static_cast<double>(csr.row_ptr[r + 1]);
    csr.row_ptr[r + 1] += csr.row_ptr[r];
  }
  for (const auto& e : m) {
    csr.col.push_back(e.col);
    csr.val.push_back(e.weight / prop.degrees[e.row]);
  }
  prop.normalized_transposed = csr.transposed();
  return prop;
}

GroundTruth GroundTruth::all_known(std::vector<double> values) {
  GroundTruth t;
  t.known.assign(values.size(), true);
  t.values = std::move(values);
  return t;
}

std::vector<std::size_t> GroundTruth::known_items() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < known.size(); ++i) {
    if (known[i]) out.push_back(i);
  }
  return out;
}

void check_split(const Split& split, const GroundTruth& truth) {
  std::vector<bool> seen(truth.values.size(), false);
  for (const auto* ids : {&split.train, &split.test}) {
    for (std::size_t i : *ids) {
      if (i >= truth.values.size()) throw ValidationError("split references unknown item");
      if (!truth.known[i]) {
        throw ValidationError("split item " + std::to_string(i) + " has no ground truth");
      }
      if (seen[i]) {
        throw ValidationError("split item " + std::to_string(i) + " appears twice");
      }
      seen[i] = true;
    }
  }
}

}  // namespace peergrade
