#include "nzflow/formats.h"

#include <charconv>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "nzflow/tutte.h"

namespace nzflow {

namespace {

std::vector<std::string> split_words(const std::string& line) {
  std::istringstream in(line);
  return {std::istream_iterator<std::string>(in),
          std::istream_iterator<std::string>()};
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw InputError("line " + std::to_string(line_no) + ": " + what);
}

long long parse_int(const std::string& token, std::size_t line_no) {
  long long v = 0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end) {
    fail(line_no, "expected an integer, got '" + token + "'");
  }
  return v;
}

std::uint32_t parse_index(const std::string& token, std::size_t line_no) {
  const long long v = parse_int(token, line_no);
  if (v < 0 || v >= std::numeric_limits<std::uint32_t>::max()) {
    fail(line_no, "index out of range: " + token);
  }
  return static_cast<std::uint32_t>(v);
}

FlowRecord make_record(long long id, long long tail, long long head,
                       long long f2, long long f3, std::optional<long long> z6,
                       std::optional<long long> int6, std::size_t line_no) {
  constexpr long long kMax = std::numeric_limits<std::uint32_t>::max();
  if (id < 0 || id >= kMax || tail < 0 || tail >= kMax || head < 0 ||
      head >= kMax) {
    fail(line_no, "edge id or endpoint out of range");
  }
  if (f2 < 0 || f2 > 1) fail(line_no, "f2 must be 0 or 1");
  if (f3 < 0 || f3 > 2) fail(line_no, "f3 must be 0, 1 or 2");
  if (z6 && (*z6 < 0 || *z6 > 5)) fail(line_no, "z6 must be in 0..5");
  if (int6 && (*int6 == 0 || *int6 < -5 || *int6 > 5)) {
    fail(line_no, "int6 must be in -5..5 and nonzero");
  }
  FlowRecord r;
  r.id = EdgeId{static_cast<std::uint32_t>(id)};
  r.tail = VertexId{static_cast<std::uint32_t>(tail)};
  r.head = VertexId{static_cast<std::uint32_t>(head)};
  r.pair = {Z2Elem(f2), Z3Elem(f3)};
  if (z6) r.z6 = Z6Elem(*z6);
  if (int6) r.int6 = static_cast<int>(*int6);
  return r;
}

FlowDocument parse_flow_text(std::istream& in) {
  FlowDocument doc;
  bool seen_solution = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto w = split_words(line);
    if (w.empty() || w[0] == "c") continue;
    if (w[0] == "s") {
      if (seen_solution) fail(line_no, "second solution line");
      if (w.size() < 2 || w[1] != "SOLUTION" || w.size() > 3) {
        fail(line_no, "expected 's SOLUTION root=<u>'");
      }
      if (w.size() == 3) {
        if (w[2].rfind("root=", 0) != 0) fail(line_no, "expected root=<u>");
        doc.root = VertexId{parse_index(w[2].substr(5), line_no)};
      }
      seen_solution = true;
    } else if (w[0] == "f") {
      if (!seen_solution) fail(line_no, "flow line before the solution line");
      if (w.size() < 6 || w.size() > 8) {
        fail(line_no, "expected 'f <id> <tail> <head> <f2> <f3> [<z6> [<int6>]]'");
      }
      std::optional<long long> z6;
      std::optional<long long> int6;
      if (w.size() >= 7) z6 = parse_int(w[6], line_no);
      if (w.size() == 8) int6 = parse_int(w[7], line_no);
      doc.edges.push_back(make_record(
          parse_int(w[1], line_no), parse_int(w[2], line_no),
          parse_int(w[3], line_no), parse_int(w[4], line_no),
          parse_int(w[5], line_no), z6, int6, line_no));
    } else {
      fail(line_no, "unknown line type '" + w[0] + "'");
    }
  }
  if (!seen_solution) throw InputError("missing 's SOLUTION' line");
  return doc;
}

FlowDocument parse_flow_machine(std::istream& in) {
  using nlohmann::json;
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON flow document: ") + e.what());
  }
  FlowDocument doc;
  try {
    if (!j.is_object()) throw InputError("flow document must be an object");
    if (j.contains("root") && !j.at("root").is_null()) {
      const long long root = j.at("root").get<long long>();
      if (root < 0) throw InputError("root must be non-negative");
      doc.root = VertexId{static_cast<std::uint32_t>(root)};
    }
    std::size_t k = 0;
    for (const json& e : j.at("edges")) {
      ++k;
      std::optional<long long> z6;
      std::optional<long long> int6;
      if (e.contains("z6")) z6 = e.at("z6").get<long long>();
      if (e.contains("int6")) int6 = e.at("int6").get<long long>();
      doc.edges.push_back(make_record(
          e.at("id").get<long long>(), e.at("tail").get<long long>(),
          e.at("head").get<long long>(), e.at("f2").get<long long>(),
          e.at("f3").get<long long>(), z6, int6, k));
    }
    if (j.contains("trace")) {
      for (const json& t : j.at("trace")) doc.trace.push_back(t.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("bad flow document field: ") + e.what());
  }
  return doc;
}

}  // namespace

Multigraph parse_graph(std::istream& in) {
  std::optional<std::pair<std::size_t, std::size_t>> header;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> arcs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto w = split_words(line);
    if (w.empty() || w[0] == "c") continue;
    if (w[0] == "p") {
      if (header) fail(line_no, "second header line");
      if (w.size() != 4 || w[1] != "nzf") fail(line_no, "expected 'p nzf <n> <m>'");
      header = {parse_index(w[2], line_no), parse_index(w[3], line_no)};
    } else if (w[0] == "e") {
      if (!header) fail(line_no, "edge line before the header");
      if (w.size() != 3) fail(line_no, "expected 'e <tail> <head>'");
      const std::uint32_t t = parse_index(w[1], line_no);
      const std::uint32_t h = parse_index(w[2], line_no);
      if (t >= header->first || h >= header->first) {
        fail(line_no, "endpoint not below n = " + std::to_string(header->first));
      }
      arcs.emplace_back(t, h);
    } else {
      fail(line_no, "unknown line type '" + w[0] + "'");
    }
  }
  if (!header) throw InputError("missing 'p nzf <n> <m>' header");
  if (arcs.size() != header->second) {
    throw InputError("header announces " + std::to_string(header->second) +
                     " edges but the file has " + std::to_string(arcs.size()));
  }
  return Multigraph::build(header->first, arcs);
}

Multigraph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

void write_graph(std::ostream& out, const Multigraph& g) {
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    if (g.edge_at(i).id.index != i) {
      throw InputError("graph files need edge ids 0..m-1");
    }
  }
  out << "p nzf " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) {
    out << "e " << e.tail.index << ' ' << e.head.index << '\n';
  }
}

std::string graph_to_string(const Multigraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

FlowDocument parse_flow(std::istream& in) {
  in >> std::ws;
  if (in.peek() == '{') return parse_flow_machine(in);
  return parse_flow_text(in);
}

FlowDocument parse_flow_string(const std::string& text) {
  std::istringstream in(text);
  return parse_flow(in);
}

void write_flow(std::ostream& out, const FlowDocument& doc, FlowFormat format) {
  if (format == FlowFormat::kMachine) {
    nlohmann::json j;
    j["format"] = "nzf-flow";
    j["root"] = doc.root ? nlohmann::json(doc.root->index) : nlohmann::json();
    j["edges"] = nlohmann::json::array();
    for (const FlowRecord& r : doc.edges) {
      nlohmann::json e = {{"id", r.id.index},     {"tail", r.tail.index},
                          {"head", r.head.index}, {"f2", r.pair.f2.value()},
                          {"f3", r.pair.f3.value()}};
      if (r.z6) e["z6"] = r.z6->value();
      if (r.int6) e["int6"] = *r.int6;
      j["edges"].push_back(std::move(e));
    }
    if (!doc.trace.empty()) j["trace"] = doc.trace;
    out << j.dump(1) << '\n';
    return;
  }
  for (const std::string& t : doc.trace) out << "c trace " << t << '\n';
  out << "s SOLUTION";
  if (doc.root) out << " root=" << doc.root->index;
  out << '\n';
  for (const FlowRecord& r : doc.edges) {
    out << "f " << r.id.index << ' ' << r.tail.index << ' ' << r.head.index
        << ' ' << r.pair.f2.value() << ' ' << r.pair.f3.value();
    if (r.z6) {
      out << ' ' << r.z6->value();
      if (r.int6) out << ' ' << *r.int6;
    }
    out << '\n';
  }
}

std::string flow_to_string(const FlowDocument& doc, FlowFormat format) {
  std::ostringstream out;
  write_flow(out, doc, format);
  return out.str();
}

std::optional<std::string> check_consistency(const FlowDocument& doc) {
  for (const FlowRecord& r : doc.edges) {
    const Z6Elem expected = pair_to_z6(r.pair);
    if (r.z6 && *r.z6 != expected) {
      return "edge " + std::to_string(r.id.index) + ": z6 " +
             std::to_string(r.z6->value()) + " does not match (f2, f3) = (" +
             std::to_string(r.pair.f2.value()) + ", " +
             std::to_string(r.pair.f3.value()) + ")";
    }
    if (r.int6 && Z6Elem(*r.int6) != expected) {
      return "edge " + std::to_string(r.id.index) + ": int6 " +
             std::to_string(*r.int6) + " is not congruent to z6 " +
             std::to_string(expected.value()) + " mod 6";
    }
  }
  return std::nullopt;
}

FlowDocument make_flow_document(const Multigraph& g,
                                std::optional<VertexId> root,
                                const GroupFlow& flow,
                                const IntegerFlow* integer) {
  FlowDocument doc;
  doc.root = root;
  for (const Edge& e : g.edges()) {
    FlowRecord r{e.id, e.tail, e.head, flow.at(e.id), std::nullopt,
                 std::nullopt};
    if (integer) {
      r.z6 = pair_to_z6(r.pair);
      r.int6 = integer->at(e.id);
    }
    doc.edges.push_back(r);
  }
  return doc;
}

void check_matches_graph(const FlowDocument& doc, const Multigraph& g) {
  if (doc.edges.size() != g.edge_count()) {
    throw InputError("flow lists " + std::to_string(doc.edges.size()) +
                     " edges, graph has " + std::to_string(g.edge_count()));
  }
  std::vector<std::uint8_t> seen(g.edge_count(), 0);
  for (const FlowRecord& r : doc.edges) {
    auto slot = g.slot_of(r.id);
    if (!slot) {
      throw InputError("flow names edge " + std::to_string(r.id.index) +
                       ", which the graph does not have");
    }
    if (seen[*slot]++) {
      throw InputError("edge " + std::to_string(r.id.index) + " listed twice");
    }
    const Edge& e = g.edge_at(*slot);
    if (e.tail != r.tail || e.head != r.head) {
      throw InputError("edge " + std::to_string(r.id.index) +
                       " has different endpoints in the graph");
    }
  }
  if (doc.root && !g.contains(*doc.root)) {
    throw InputError("root " + std::to_string(doc.root->index) +
                     " is not a vertex of the graph");
  }
}

GroupFlow group_flow_of(const FlowDocument& doc) {
  GroupFlow f;
  for (const FlowRecord& r : doc.edges) f.set(r.id, r.pair);
  return f;
}

IntegerFlow integer_flow_of(const FlowDocument& doc) {
  IntegerFlow f;
  for (const FlowRecord& r : doc.edges) {
    if (!r.int6) {
      throw InputError("edge " + std::to_string(r.id.index) +
                       " has no int6 value");
    }
    f.set(r.id, *r.int6);
  }
  return f;
}

}  // namespace nzflow
