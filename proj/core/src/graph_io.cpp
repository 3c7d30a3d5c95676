#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "nnc/errors.hpp"
#include "nnc/graph.hpp"

namespace nnc {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(trim(line.substr(start)));
      return fields;
    }
    fields.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
}

// Reads the header line, skipping a UTF-8 BOM. Returns the number of lines consumed.
std::size_t expect_header(std::istream& in, std::string_view expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("missing header `" + std::string(expected) + "`", 1);
  std::string_view view = line;
  if (view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
  auto fields = split_fields(view);
  std::string joined;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) joined += ',';
    joined += fields[i];
  }
  if (joined != expected) {
    throw ParseError("expected header `" + std::string(expected) + "`, got `" + std::string(view) + "`", 1);
  }
  return 1;
}

}  // namespace

Vertex LabelIndex::intern(std::string_view label) {
  auto [it, inserted] = ids_.try_emplace(std::string(label), static_cast<Vertex>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

Graph load_edge_list(std::istream& in, LabelIndex& index) {
  std::size_t line_no = expect_header(in, "node_a,node_b");
  std::vector<Edge> edges;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 2) {
      throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), line_no);
    }
    if (fields[0].empty()) throw ParseError("empty node_a", line_no);
    const Vertex a = index.intern(fields[0]);
    if (fields[1].empty()) continue;  // isolated-vertex declaration
    if (fields[0] == fields[1]) {
      throw ValidationError("line " + std::to_string(line_no) + ": self-edge on `" +
                            std::string(fields[0]) + "`");
    }
    edges.push_back(make_edge(a, index.intern(fields[1])));
  }
  return Graph::from_edges(index.size(), edges);
}

LabeledGraph load_edge_list(std::istream& in) {
  LabelIndex index;
  Graph g = load_edge_list(in, index);
  return {std::move(g), index.labels()};
}

void write_edge_list(std::ostream& out, const Graph& g, std::span<const std::string> labels) {
  const auto label = [&](Vertex v) {
    return labels.empty() ? std::to_string(v) : labels[v];
  };
  out << "node_a,node_b\n";
  for (const Edge& e : g.edges()) out << label(e.a) << ',' << label(e.b) << '\n';
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) out << label(v) << ",\n";
  }
  if (!out) throw RunError("failed writing edge list");
}

RoundedContactData load_rounds(std::istream& in) {
  std::size_t line_no = expect_header(in, "round,node_a,node_b");
  LabelIndex index;
  std::map<long long, std::vector<Edge>> by_round;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 fields, got " + std::to_string(fields.size()), line_no);
    }
    long long round = 0;
    const auto* first = fields[0].data();
    const auto* last = first + fields[0].size();
    auto [ptr, ec] = std::from_chars(first, last, round);
    if (ec != std::errc{} || ptr != last || round < 1) {
      throw ParseError("round must be a positive integer, got `" + std::string(fields[0]) + "`",
                       line_no);
    }
    if (fields[1].empty() || fields[2].empty()) throw ParseError("empty node label", line_no);
    if (fields[1] == fields[2]) {
      throw ValidationError("line " + std::to_string(line_no) + ": self-edge on `" +
                            std::string(fields[1]) + "`");
    }
    const Vertex a = index.intern(fields[1]);
    const Vertex b = index.intern(fields[2]);
    by_round[round].push_back(make_edge(a, b));
  }
  RoundedContactData data;
  for (auto& [round, edges] : by_round) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    data.rounds.push_back(std::move(edges));
  }
  data.labels = index.labels();
  return data;
}

Graph build_true_graph_from_rounds(const RoundedContactData& data, int min_count) {
  if (min_count < 1) throw ParameterError("min_count must be >= 1");
  std::map<Edge, int> seen;
  for (const auto& round : data.rounds) {
    std::vector<Edge> unique_round = round;
    std::sort(unique_round.begin(), unique_round.end());
    unique_round.erase(std::unique(unique_round.begin(), unique_round.end()), unique_round.end());
    for (const Edge& e : unique_round) ++seen[make_edge(e.a, e.b)];
  }
  std::vector<Edge> kept;
  for (const auto& [e, count] : seen) {
    if (count >= min_count) kept.push_back(e);
  }
  return Graph::from_edges(data.labels.size(), kept);
}

}  // namespace nnc
