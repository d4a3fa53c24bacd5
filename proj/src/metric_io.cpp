// Copyright 2026 The fairbias Authors
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

#include "metric_io.hpp"

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

namespace fairbias {
namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return in;
}

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

template <typename T>
T read_value(std::istringstream& in, const std::string& what) {
  T v{};
  if (!(in >> v)) fail(ErrorCode::kParse, "expected a value for " + what);
  return v;
}

void expect_end(std::istringstream& in, int line_no) {
  std::string extra;
  if (in >> extra) fail(ErrorCode::kParse, "unexpected '" + extra + "' on line " + std::to_string(line_no));
}

}  // namespace

Metric parse_metric(std::istream& in) {
  std::string kind;
  std::optional<int> n, nodes;
  Cost scale = 1, spacing = 1;
  std::vector<int> points;
  std::vector<std::vector<Cost>> rows;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(strip_comment(raw));
    std::string head;
    if (!(line >> head)) continue;
    if (head == "kind") {
      kind = read_value<std::string>(line, "kind");
    } else if (head == "n") {
      n = read_value<int>(line, "n");
    } else if (head == "scale") {
      scale = read_value<Cost>(line, "scale");
    } else if (head == "spacing") {
      spacing = read_value<Cost>(line, "spacing");
    } else if (head == "nodes") {
      nodes = read_value<int>(line, "nodes");
    } else if (head == "points") {
      int p;
      while (line >> p) points.push_back(p);
      if (!line.eof()) fail(ErrorCode::kParse, "bad point list on line " + std::to_string(line_no));
      continue;
    } else {
      std::vector<Cost> row;
      std::istringstream all(strip_comment(raw));
      Cost v;
      while (all >> v) row.push_back(v);
      if (!all.eof()) fail(ErrorCode::kParse, "bad number on line " + std::to_string(line_no));
      rows.push_back(std::move(row));
      continue;
    }
    expect_end(line, line_no);
  }

  if (kind.empty()) fail(ErrorCode::kParse, "metric file has no kind line");
  if (kind == "line") {
    if (!n) fail(ErrorCode::kParse, "line metric needs n");
    return build_line_metric(*n, spacing);
  }
  if (kind == "matrix" || kind == "costs") {
    if (!n) fail(ErrorCode::kParse, "matrix needs n");
    if (static_cast<int>(rows.size()) != *n) fail(ErrorCode::kParse, "matrix needs n rows");
    std::vector<Cost> flat;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != *n) fail(ErrorCode::kParse, "matrix rows need n entries");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return kind == "matrix" ? Metric::from_matrix(*n, std::move(flat), scale)
                            : Metric::unchecked(*n, std::move(flat), scale);
  }
  if (kind == "tree") {
    if (!nodes) fail(ErrorCode::kParse, "tree needs a nodes line");
    if (points.empty()) {
      if (!n) fail(ErrorCode::kParse, "tree needs n or a points line");
      for (int i = 0; i < *n; ++i) points.push_back(i);
    }
    if (n && *n != static_cast<int>(points.size()))
      fail(ErrorCode::kParse, "points line does not list n points");
    std::vector<WeightedTree::Edge> edges;
    for (const auto& row : rows) {
      if (row.size() != 3) fail(ErrorCode::kParse, "tree edges are 'u v length'");
      edges.push_back({static_cast<int>(row[0]), static_cast<int>(row[1]), row[2]});
    }
    return Metric::from_tree(
        std::make_shared<const WeightedTree>(*nodes, std::move(edges), std::move(points)), scale);
  }
  fail(ErrorCode::kParse, "unknown metric kind '" + kind + "'");
}

Metric load_metric(const std::string& path) {
  auto in = open_input(path);
  return parse_metric(in);
}

void write_tree(std::ostream& out, const WeightedTree& tree) {
  out << "kind tree\nn " << tree.point_count() << "\nnodes " << tree.node_count() << "\npoints";
  for (int node : tree.point_nodes()) out << ' ' << node;
  out << '\n';
  for (const auto& e : tree.edges()) out << e.u << ' ' << e.v << ' ' << e.length << '\n';
}

void write_metric(std::ostream& out, const Metric& metric) {
  if (const WeightedTree* tree = metric.tree()) {
    write_tree(out, *tree);
    if (metric.scale() != 1) out << "scale " << metric.scale() << '\n';
    return;
  }
  out << "kind " << (metric.is_metric() ? "matrix" : "costs") << "\nn " << metric.size()
      << "\nscale " << metric.scale() << '\n';
  for (int i = 0; i < metric.size(); ++i) {
    for (int j = 0; j < metric.size(); ++j) out << (j ? " " : "") << metric.dist(i, j);
    out << '\n';
  }
}

RequestDistribution parse_distribution(std::istream& in, int n) {
  std::vector<std::int64_t> weights(static_cast<std::size_t>(n), 0);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(strip_comment(raw));
    std::int64_t id;
    if (!(line >> id)) {
      std::string rest;
      if (std::istringstream(strip_comment(raw)) >> rest)
        fail(ErrorCode::kParse, "bad distribution line " + std::to_string(line_no));
      continue;
    }
    auto w = read_value<std::int64_t>(line, "weight");
    expect_end(line, line_no);
    if (id < 0 || id >= n) fail(ErrorCode::kParse, "point id out of range on line " + std::to_string(line_no));
    weights[id] += w;
  }
  return RequestDistribution(std::move(weights));
}

RequestDistribution load_distribution(const std::string& path, int n) {
  auto in = open_input(path);
  return parse_distribution(in, n);
}

std::vector<PointId> parse_requests(std::istream& in) {
  std::vector<PointId> out;
  std::string raw;
  while (std::getline(in, raw)) {
    std::istringstream line(strip_comment(raw));
    PointId p;
    while (line >> p) out.push_back(p);
    if (!line.eof()) fail(ErrorCode::kParse, "bad request id");
  }
  return out;
}

std::vector<PointId> load_requests(const std::string& path) {
  auto in = open_input(path);
  return parse_requests(in);
}

}  // namespace fairbias
