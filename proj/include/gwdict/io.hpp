#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gwdict/error.hpp"
#include "gwdict/graph.hpp"
#include "gwdict/matrix.hpp"

namespace gwdict {

// A graph read from text plus the original label of every dense node id.
struct LoadedGraph {
  Graph graph;
  std::vector<std::string> labels;

  bool identity_labels() const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] != std::to_string(i)) return false;
    return true;
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ',')) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != ',') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<double> parse_double(std::string_view s) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) return std::nullopt;
    return v;
  } catch (...) {
    return std::nullopt;
  }
}

inline std::optional<std::size_t> parse_index(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

inline std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace detail

// Edge list: one `j<TAB>k[<TAB>w]` per line (w defaults to 1.0), `#`
// comments and blank lines ignored. A `# nodes N` comment declares nodes
// 0..N-1 so isolated or trailing nodes survive a round trip. Without it,
// labels that are all nonnegative integers keep their numeric order;
// otherwise labels are sorted as strings.
inline LoadedGraph read_edge_list(std::istream& in) {
  std::optional<std::size_t> declared;
  struct RawEdge {
    std::string u, v;
    double w;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto t = detail::trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      const auto fields = detail::split_fields(t.substr(1));
      if (fields.size() == 2 && (fields[0] == "nodes" || fields[0] == "nodes:")) {
        const auto n = detail::parse_index(fields[1]);
        if (!n) throw InvalidInput("line " + std::to_string(lineno) + ": bad node count");
        declared = *n;
      }
      continue;
    }
    const auto fields = detail::split_fields(t);
    if (fields.size() < 2 || fields.size() > 3)
      throw InvalidInput("line " + std::to_string(lineno) + ": expected 'j k [w]'");
    double w = 1.0;
    if (fields.size() == 3) {
      const auto pw = detail::parse_double(fields[2]);
      if (!pw) throw InvalidInput("line " + std::to_string(lineno) + ": bad weight '" + std::string(fields[2]) + "'");
      w = *pw;
    }
    raw.push_back({std::string(fields[0]), std::string(fields[1]), w, lineno});
  }

  LoadedGraph out;
  std::map<std::string, NodeId> index;
  if (declared) {
    for (std::size_t i = 0; i < *declared; ++i) {
      out.labels.push_back(std::to_string(i));
      index[out.labels.back()] = i;
    }
    for (const RawEdge& e : raw)
      for (const std::string* l : {&e.u, &e.v})
        if (!index.count(*l))
          throw InvalidInput("line " + std::to_string(e.line) + ": node '" + *l + "' outside declared 0.." +
                             std::to_string(*declared ? *declared - 1 : 0));
  } else {
    std::vector<std::string> labels;
    for (const RawEdge& e : raw) {
      labels.push_back(e.u);
      labels.push_back(e.v);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    const bool numeric =
        std::all_of(labels.begin(), labels.end(), [](const std::string& l) { return detail::parse_index(l).has_value(); });
    if (numeric)
      std::sort(labels.begin(), labels.end(),
                [](const std::string& a, const std::string& b) { return *detail::parse_index(a) < *detail::parse_index(b); });
    for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
    out.labels = std::move(labels);
  }
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({index.at(e.u), index.at(e.v), e.w});
  out.graph = Graph::build(out.labels.size(), edges);
  return out;
}

inline LoadedGraph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open graph file '" + path + "'");
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& os, const Graph& g) {
  os << "# nodes " << g.size() << '\n';
  for (const Edge& e : g.edges()) os << e.u << '\t' << e.v << '\t' << detail::format_double(e.weight) << '\n';
}

// Signal: either one value per line in node order, or `node,value` rows
// (an optional `node,value` header is skipped) keyed by the graph labels.
inline Vector read_signal(std::istream& in, const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = i;
  Vector plain;
  Vector keyed(labels.size(), 0.0);
  std::vector<char> seen(labels.size(), 0);
  bool any_keyed = false;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto fields = detail::split_fields(t);
    if (fields.size() == 1) {
      const auto v = detail::parse_double(fields[0]);
      if (!v) throw InvalidInput("signal line " + std::to_string(lineno) + ": bad value");
      plain.push_back(*v);
    } else if (fields.size() == 2) {
      const auto v = detail::parse_double(fields[1]);
      if (!v) {
        if (lineno == 1) continue;  // header
        throw InvalidInput("signal line " + std::to_string(lineno) + ": bad value");
      }
      const auto it = index.find(std::string(fields[0]));
      if (it == index.end())
        throw InvalidInput("signal line " + std::to_string(lineno) + ": unknown node '" + std::string(fields[0]) + "'");
      if (seen[it->second]) throw InvalidInput("signal line " + std::to_string(lineno) + ": node given twice");
      seen[it->second] = 1;
      keyed[it->second] = *v;
      any_keyed = true;
    } else {
      throw InvalidInput("signal line " + std::to_string(lineno) + ": expected 'value' or 'node,value'");
    }
  }
  if (any_keyed && !plain.empty()) throw InvalidInput("signal mixes keyed and plain rows");
  if (any_keyed) {
    if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw InvalidInput("signal is missing nodes");
    return keyed;
  }
  if (plain.size() != labels.size())
    throw InvalidInput("signal has " + std::to_string(plain.size()) + " values for " + std::to_string(labels.size()) +
                       " nodes");
  return plain;
}

inline Vector read_signal_file(const std::string& path, const std::vector<std::string>& labels) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open signal file '" + path + "'");
  return read_signal(in, labels);
}

inline void write_signal(std::ostream& os, std::span<const double> x) {
  for (double v : x) os << detail::format_double(v) << '\n';
}

// Sparse triplets `row,col,value`, one stored entry per line.
inline void write_triplets(std::ostream& os, const CscMatrix& m) {
  os << "row,col,value\n";
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto col = m.column(c);
    for (std::size_t k = 0; k < col.index.size(); ++k)
      os << col.index[k] << ',' << c << ',' << detail::format_double(col.value[k]) << '\n';
  }
}

// Reads triplets written column by column with increasing rows.
inline CscMatrix read_triplets(std::istream& in, std::size_t rows, std::size_t cols) {
  std::vector<std::vector<std::pair<std::size_t, double>>> columns(cols);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const auto t = detail::trim(line);
    if (t.empty() || (lineno == 1 && t.starts_with("row"))) continue;
    const auto f = detail::split_fields(t);
    if (f.size() != 3) throw InvalidInput("triplet line " + std::to_string(lineno) + ": expected row,col,value");
    const auto r = detail::parse_index(f[0]);
    const auto c = detail::parse_index(f[1]);
    const auto v = detail::parse_double(f[2]);
    if (!r || !c || !v || *r >= rows || *c >= cols)
      throw InvalidInput("triplet line " + std::to_string(lineno) + ": bad entry");
    columns[*c].emplace_back(*r, *v);
  }
  CscMatrix m(rows);
  for (auto& col : columns) {
    std::sort(col.begin(), col.end());
    std::vector<std::size_t> idx;
    Vector val;
    for (const auto& [r, v] : col) {
      idx.push_back(r);
      val.push_back(v);
    }
    m.push_column(idx, val);
  }
  return m;
}

}  // namespace gwdict
