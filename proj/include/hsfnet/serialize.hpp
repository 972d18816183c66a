#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsfnet/graph.hpp"

namespace hsfnet {

enum class ExportFormat { EdgeList, Dot, Json };

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// EdgeList: one "u v" per line, u < v, ascending. Dot: undirected graph
// with the level as a vertex attribute. Json: full instance including
// params and levels; the only format that round-trips levels verbatim.
void export_edges(const GraphInstance& g, ExportFormat format, std::ostream& out);
std::string export_edges_string(const GraphInstance& g, ExportFormat format);

struct ImportResult {
    GraphInstance graph;
    std::vector<std::string> warnings;  // non-fatal findings (disconnected input, ...)
};

// Reads either an edge list or the Json instance format (sniffed from
// the first byte). For edge lists the level map is recovered by
// BFS-from-hub + degree classification when the input matches one of
// the built families; otherwise levels are left unknown with a warning.
ImportResult import_edges(std::istream& in,
                          const std::optional<ModelParams>& params = {});
ImportResult import_edges_string(const std::string& text,
                                 const std::optional<ModelParams>& params = {});

}  // namespace hsfnet
