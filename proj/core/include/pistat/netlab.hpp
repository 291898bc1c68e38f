#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pistat/corpus.hpp"

namespace pistat {

/// Node position inside an AggregateNetwork. Nodes are ordered by
/// researcher id, so the smallest NodeIndex is also the smallest id.
using NodeIndex = std::uint32_t;

/// Simple undirected co-authorship graph over a period.
struct AggregateNetwork {
  YearRange period;
  std::vector<std::string> ids;       // sorted
  std::vector<std::string> fields;    // main field per node
  std::vector<std::uint8_t> is_pi;    // PI status as of period.last
  std::vector<std::vector<NodeIndex>> adjacency;  // sorted, no self-loops

  std::size_t node_count() const { return ids.size(); }
  std::size_t edge_count() const;
  std::size_t degree(NodeIndex v) const { return adjacency[v].size(); }
  /// Sorted (u < v) edge list.
  std::vector<std::pair<NodeIndex, NodeIndex>> edges() const;
  std::optional<NodeIndex> find(std::string_view id) const;
};

/// Nodes: researchers with a scientific publication in [start, end].
/// Edges: registered co-authors of such a publication. A node is a PI when
/// it led a project starting no later than `end_year`.
AggregateNetwork build_network(const Corpus& corpus, Year start_year, Year end_year);

/// Connected component label per node plus component sizes, labels assigned
/// in order of each component's smallest node.
struct Components {
  std::vector<std::uint32_t> label;
  std::vector<std::size_t> sizes;
};

/// Components of the subgraph induced by nodes with keep[v] != 0; dropped
/// nodes get label UINT32_MAX.
Components connected_components(const AggregateNetwork& net, const std::vector<std::uint8_t>& keep);
Components connected_components(const AggregateNetwork& net);

/// Sorted nodes of the largest component; ties go to the component holding
/// the smallest node. Empty for an empty network.
std::vector<NodeIndex> giant_component(const AggregateNetwork& net);

struct FirstTimePis {
  int count = 0;                 // n_pi_star
  std::optional<double> alpha;   // unset when count == 0
};

/// Giant-component members first granted in `year`, and the share of them
/// adjacent to a researcher first granted before `year`.
FirstTimePis first_time_pis(const Corpus& corpus, const AggregateNetwork& net, Year year);

/// Mean share of PI neighbours over `restrict_to` members whose degree is at
/// least max(min_degree, 1).
std::optional<double> ego_pi_density(const AggregateNetwork& net, const std::vector<NodeIndex>& restrict_to,
                                     int min_degree);

struct BackboneRemoval {
  int components = 0;   // zeta_cross
  int singletons = 0;
  double gamma_cross = 0.0;  // largest remaining component / n_A
};

/// Deletes every PI from the giant component and measures what is left.
BackboneRemoval remove_backbone(const AggregateNetwork& net);

struct PiSubnetwork {
  double gc_share = 0.0;
  int component_count = 0;
  int isolated_count = 0;
  int pi_count = 0;
};

/// Subgraph induced on the PIs of the giant component; nullopt without PIs.
std::optional<PiSubnetwork> pi_subnetwork(const AggregateNetwork& net);

struct InvariantRow {
  Year start_year = 0;
  Year end_year = 0;
  int n_A = 0;
  int n_pi = 0;
  double gamma_gc = 0.0;
  int n_pi_gc = 0;
  int n_pi_star = 0;
  std::optional<double> alpha_star;
  std::optional<double> nu_A;
  std::optional<double> nu_pi;
  int zeta_cross = 0;
  int zeta_cross_singletons = 0;
  double gamma_cross = 0.0;
};

/// Table rows for an already-built network.
InvariantRow invariant_row(const Corpus& corpus, const AggregateNetwork& net);

/// One row per period whose network has at least one node.
std::vector<InvariantRow> invariant_table(const Corpus& corpus, const std::vector<YearRange>& periods);

/// (first, last) .. (first, last_end) with one period per end year.
std::vector<YearRange> growing_periods(Year first, Year first_end, Year last_end);

enum class ExportFormat { kEdgeList, kGraphMl };

void write_edge_list(const AggregateNetwork& net, std::ostream& out);
void write_graphml(const AggregateNetwork& net, std::ostream& out);
/// Throws IoError with the path on failure.
void export_network(const AggregateNetwork& net, const std::filesystem::path& path, ExportFormat format);

/// Reads back write_edge_list output. Throws ParseError.
AggregateNetwork read_edge_list(std::istream& in, const std::string& source_name = "<stream>");

}  // namespace pistat
