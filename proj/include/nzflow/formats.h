#ifndef NZFLOW_FORMATS_H_
#define NZFLOW_FORMATS_H_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nzflow/flows.h"
#include "nzflow/multigraph.h"

namespace nzflow {

// Graph file:
//
//   c any comment
//   p nzf <n> <m>
//   e <tail> <head>        (m times, 0-based vertices)
//
// Edge ids are 0..m-1 in file order. Blank lines are ignored.
// Throws InputError (with the line number) on anything else.
Multigraph parse_graph(std::istream& in);
Multigraph parse_graph_string(const std::string& text);

// Requires dense ids 0..m-1, as produced by parse_graph or build.
void write_graph(std::ostream& out, const Multigraph& g);
std::string graph_to_string(const Multigraph& g);

struct FlowRecord {
  EdgeId id;
  VertexId tail;
  VertexId head;
  PairElem pair;
  std::optional<Z6Elem> z6;
  std::optional<int> int6;

  friend bool operator==(const FlowRecord&, const FlowRecord&) = default;
};

struct FlowDocument {
  std::optional<VertexId> root;
  std::vector<FlowRecord> edges;
  std::vector<std::string> trace;  // free-form, machine format only

  friend bool operator==(const FlowDocument&, const FlowDocument&) = default;
};

enum class FlowFormat { kText, kMachine };

// Text flow file:
//
//   c any comment
//   s SOLUTION root=<u>           ("root=" may be omitted)
//   f <id> <tail> <head> <f2> <f3> [<z6> [<int6>]]
//
// The machine format is one JSON object with the same fields:
//   {"format": "nzf-flow", "root": u, "edges": [{"id", "tail", "head",
//    "f2", "f3", "z6", "int6"}, ...], "trace": [...]}
// parse_flow accepts either, deciding on the first non-blank character.
// Throws InputError on syntax errors and on f2/f3/int6 outside their ranges.
FlowDocument parse_flow(std::istream& in);
FlowDocument parse_flow_string(const std::string& text);

void write_flow(std::ostream& out, const FlowDocument& doc, FlowFormat format);
std::string flow_to_string(const FlowDocument& doc, FlowFormat format);

// The congruences a record must satisfy on its own: z6 = 3 f2 + 4 f3 and
// int6 = z6 (mod 6). Returns a message naming the first bad edge.
std::optional<std::string> check_consistency(const FlowDocument& doc);

FlowDocument make_flow_document(const Multigraph& g,
                                std::optional<VertexId> root,
                                const GroupFlow& flow,
                                const IntegerFlow* integer);

// The document must list exactly g's edges, with g's endpoints.
// Throws InputError naming the first mismatch.
void check_matches_graph(const FlowDocument& doc, const Multigraph& g);

GroupFlow group_flow_of(const FlowDocument& doc);
// Throws InputError if some record has no int6 column.
IntegerFlow integer_flow_of(const FlowDocument& doc);

}  // namespace nzflow

#endif  // NZFLOW_FORMATS_H_
