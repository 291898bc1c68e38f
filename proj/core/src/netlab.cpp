#include "pistat/netlab.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pistat/error.hpp"

namespace pistat {

namespace {
constexpr std::uint32_t kDropped = std::numeric_limits<std::uint32_t>::max();
}  // namespace

std::size_t AggregateNetwork::edge_count() const {
  std::size_t twice = 0;
  for (const auto& nbrs : adjacency) twice += nbrs.size();
  return twice / 2;
}

std::vector<std::pair<NodeIndex, NodeIndex>> AggregateNetwork::edges() const {
  std::vector<std::pair<NodeIndex, NodeIndex>> out;
  out.reserve(edge_count());
  for (NodeIndex u = 0; u < adjacency.size(); ++u) {
    for (auto v : adjacency[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::optional<NodeIndex> AggregateNetwork::find(std::string_view id) const {
  auto it = std::lower_bound(ids.begin(), ids.end(), id);
  if (it == ids.end() || *it != id) return std::nullopt;
  return static_cast<NodeIndex>(it - ids.begin());
}

AggregateNetwork build_network(const Corpus& corpus, Year start_year, Year end_year) {
  if (start_year > end_year) throw UsageError("network period starts after it ends");
  AggregateNetwork net;
  net.period = {start_year, end_year};
  const auto bounds = corpus.year_bounds();
  const Year lo = std::max(start_year, bounds.first);
  const Year hi = std::min(end_year, bounds.last);

  std::vector<std::uint8_t> present(corpus.researchers().size(), 0);
  for (Year y = lo; y <= hi; ++y) {
    for (auto p : corpus.publications_in(y)) {
      for (auto r : corpus.publication(p).registered_authors) present[r] = 1;
    }
  }
  std::vector<ResearcherIndex> members;
  for (ResearcherIndex r = 0; r < present.size(); ++r) {
    if (present[r]) members.push_back(r);
  }
  std::sort(members.begin(), members.end(), [&](ResearcherIndex a, ResearcherIndex b) {
    return corpus.researcher(a).id < corpus.researcher(b).id;
  });
  std::vector<NodeIndex> node_of(corpus.researchers().size(), kDropped);
  for (NodeIndex v = 0; v < members.size(); ++v) {
    const auto r = members[v];
    node_of[r] = v;
    net.ids.push_back(corpus.researcher(r).id);
    net.fields.push_back(corpus.researcher(r).main_field);
    const auto first = corpus.first_grant_year(r);
    net.is_pi.push_back(first && *first <= end_year ? 1 : 0);
  }

  net.adjacency.resize(members.size());
  for (Year y = lo; y <= hi; ++y) {
    for (auto p : corpus.publications_in(y)) {
      const auto& authors = corpus.publication(p).registered_authors;
      for (std::size_t i = 0; i < authors.size(); ++i) {
        for (std::size_t j = i + 1; j < authors.size(); ++j) {
          const auto u = node_of[authors[i]];
          const auto v = node_of[authors[j]];
          net.adjacency[u].push_back(v);
          net.adjacency[v].push_back(u);
        }
      }
    }
  }
  for (auto& nbrs : net.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return net;
}

Components connected_components(const AggregateNetwork& net, const std::vector<std::uint8_t>& keep) {
  const auto n = net.node_count();
  Components out;
  out.label.assign(n, kDropped);
  std::vector<NodeIndex> stack;
  for (NodeIndex s = 0; s < n; ++s) {
    if (!keep[s] || out.label[s] != kDropped) continue;
    const auto label = static_cast<std::uint32_t>(out.sizes.size());
    std::size_t size = 0;
    out.label[s] = label;
    stack.push_back(s);
    while (!stack.empty()) {
      const auto u = stack.back();
      stack.pop_back();
      ++size;
      for (auto v : net.adjacency[u]) {
        if (keep[v] && out.label[v] == kDropped) {
          out.label[v] = label;
          stack.push_back(v);
        }
      }
    }
    out.sizes.push_back(size);
  }
  return out;
}

Components connected_components(const AggregateNetwork& net) {
  return connected_components(net, std::vector<std::uint8_t>(net.node_count(), 1));
}

namespace {

// Largest component label; the lowest label (smallest node) wins ties.
std::optional<std::uint32_t> largest(const Components& c) {
  if (c.sizes.empty()) return std::nullopt;
  std::uint32_t best = 0;
  for (std::uint32_t l = 1; l < c.sizes.size(); ++l) {
    if (c.sizes[l] > c.sizes[best]) best = l;
  }
  return best;
}

std::vector<std::uint8_t> giant_mask(const AggregateNetwork& net) {
  std::vector<std::uint8_t> mask(net.node_count(), 0);
  for (auto v : giant_component(net)) mask[v] = 1;
  return mask;
}

}  // namespace

std::vector<NodeIndex> giant_component(const AggregateNetwork& net) {
  const auto c = connected_components(net);
  const auto best = largest(c);
  std::vector<NodeIndex> out;
  if (!best) return out;
  out.reserve(c.sizes[*best]);
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (c.label[v] == *best) out.push_back(v);
  }
  return out;
}

FirstTimePis first_time_pis(const Corpus& corpus, const AggregateNetwork& net, Year year) {
  std::vector<std::optional<Year>> granted(net.node_count());
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (auto r = corpus.find_researcher(net.ids[v])) granted[v] = corpus.first_grant_year(*r);
  }
  FirstTimePis out;
  int connected = 0;
  for (auto v : giant_component(net)) {
    if (granted[v] != year) continue;
    ++out.count;
    const bool has_previous = std::any_of(net.adjacency[v].begin(), net.adjacency[v].end(),
                                          [&](NodeIndex w) { return granted[w] && *granted[w] < year; });
    if (has_previous) ++connected;
  }
  if (out.count > 0) out.alpha = static_cast<double>(connected) / out.count;
  return out;
}

std::optional<double> ego_pi_density(const AggregateNetwork& net, const std::vector<NodeIndex>& restrict_to,
                                     int min_degree) {
  const std::size_t threshold = static_cast<std::size_t>(std::max(min_degree, 1));
  double sum = 0.0;
  int count = 0;
  for (auto v : restrict_to) {
    const auto& nbrs = net.adjacency[v];
    if (nbrs.size() < threshold) continue;
    const auto pis = std::count_if(nbrs.begin(), nbrs.end(), [&](NodeIndex w) { return net.is_pi[w] != 0; });
    sum += static_cast<double>(pis) / static_cast<double>(nbrs.size());
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

BackboneRemoval remove_backbone(const AggregateNetwork& net) {
  auto keep = giant_mask(net);
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (net.is_pi[v]) keep[v] = 0;
  }
  const auto c = connected_components(net, keep);
  BackboneRemoval out;
  out.components = static_cast<int>(c.sizes.size());
  out.singletons = static_cast<int>(std::count(c.sizes.begin(), c.sizes.end(), std::size_t{1}));
  if (auto best = largest(c)) {
    out.gamma_cross = static_cast<double>(c.sizes[*best]) / static_cast<double>(net.node_count());
  }
  return out;
}

std::optional<PiSubnetwork> pi_subnetwork(const AggregateNetwork& net) {
  auto keep = giant_mask(net);
  int pis = 0;
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    if (!net.is_pi[v]) keep[v] = 0;
    pis += keep[v];
  }
  if (pis == 0) return std::nullopt;
  const auto c = connected_components(net, keep);
  PiSubnetwork out;
  out.pi_count = pis;
  out.component_count = static_cast<int>(c.sizes.size());
  out.isolated_count = static_cast<int>(std::count(c.sizes.begin(), c.sizes.end(), std::size_t{1}));
  out.gc_share = static_cast<double>(c.sizes[*largest(c)]) / pis;
  return out;
}

InvariantRow invariant_row(const Corpus& corpus, const AggregateNetwork& net) {
  InvariantRow row;
  row.start_year = net.period.first;
  row.end_year = net.period.last;
  row.n_A = static_cast<int>(net.node_count());
  row.n_pi = static_cast<int>(std::count(net.is_pi.begin(), net.is_pi.end(), 1));
  const auto gc = giant_component(net);
  if (row.n_A > 0) row.gamma_gc = static_cast<double>(gc.size()) / row.n_A;
  std::vector<NodeIndex> gc_pis;
  for (auto v : gc) {
    if (net.is_pi[v]) gc_pis.push_back(v);
  }
  row.n_pi_gc = static_cast<int>(gc_pis.size());
  const auto first = first_time_pis(corpus, net, net.period.last);
  row.n_pi_star = first.count;
  row.alpha_star = first.alpha;
  row.nu_A = ego_pi_density(net, gc, 1);
  row.nu_pi = ego_pi_density(net, gc_pis, 1);
  const auto backbone = remove_backbone(net);
  row.zeta_cross = backbone.components;
  row.zeta_cross_singletons = backbone.singletons;
  row.gamma_cross = backbone.gamma_cross;
  return row;
}

std::vector<InvariantRow> invariant_table(const Corpus& corpus, const std::vector<YearRange>& periods) {
  std::vector<InvariantRow> rows;
  for (const auto& period : periods) {
    const auto net = build_network(corpus, period.first, period.last);
    if (net.node_count() == 0) continue;
    rows.push_back(invariant_row(corpus, net));
  }
  return rows;
}

std::vector<YearRange> growing_periods(Year first, Year first_end, Year last_end) {
  std::vector<YearRange> out;
  for (Year end = first_end; end <= last_end; ++end) out.push_back({first, end});
  return out;
}

void write_edge_list(const AggregateNetwork& net, std::ostream& out) {
  out << "# pistat edge list\n";
  out << "period " << net.period.first << ' ' << net.period.last << '\n';
  out << "nodes " << net.node_count() << '\n';
  const auto edges = net.edges();
  out << "edges " << edges.size() << '\n';
  for (const auto& [u, v] : edges) out << net.ids[u] << ' ' << net.ids[v] << '\n';
  out << "# id is_pi field\n";
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    out << net.ids[v] << ' ' << int{net.is_pi[v]} << ' ' << net.fields[v] << '\n';
  }
}

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_graphml(const AggregateNetwork& net, std::ostream& out) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
         "  <key id=\"is_pi\" for=\"node\" attr.name=\"is_pi\" attr.type=\"boolean\"/>\n"
         "  <key id=\"field\" for=\"node\" attr.name=\"field\" attr.type=\"string\"/>\n";
  out << "  <graph id=\"N" << net.period.first << '_' << net.period.last
      << "\" edgedefault=\"undirected\">\n";
  for (NodeIndex v = 0; v < net.node_count(); ++v) {
    out << "    <node id=\"" << xml_escape(net.ids[v]) << "\"><data key=\"is_pi\">"
        << (net.is_pi[v] ? "true" : "false") << "</data><data key=\"field\">"
        << xml_escape(net.fields[v]) << "</data></node>\n";
  }
  for (const auto& [u, v] : net.edges()) {
    out << "    <edge source=\"" << xml_escape(net.ids[u]) << "\" target=\"" << xml_escape(net.ids[v])
        << "\"/>\n";
  }
  out << "  </graph>\n</graphml>\n";
}

void export_network(const AggregateNetwork& net, const std::filesystem::path& path, ExportFormat format) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path.string(), "cannot open for writing");
  if (format == ExportFormat::kEdgeList) {
    write_edge_list(net, out);
  } else {
    write_graphml(net, out);
  }
  out.flush();
  if (!out) throw IoError(path.string(), "write failed");
}

AggregateNetwork read_edge_list(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::string {
    if (!std::getline(in, line)) throw ParseError(source_name, line_no + 1, "unexpected end of file");
    ++line_no;
    return line;
  };
  auto expect_count = [&](std::string_view key) -> std::size_t {
    std::istringstream ss(next());
    std::string word;
    long long value = -1;
    if (!(ss >> word >> value) || word != key || value < 0) {
      throw ParseError(source_name, line_no, "expected '" + std::string(key) + " <count>'");
    }
    return static_cast<std::size_t>(value);
  };

  if (next().rfind("# pistat edge list", 0) != 0) {
    throw ParseError(source_name, line_no, "missing edge list banner");
  }
  AggregateNetwork net;
  {
    std::istringstream ss(next());
    std::string word;
    if (!(ss >> word >> net.period.first >> net.period.last) || word != "period") {
      throw ParseError(source_name, line_no, "expected 'period <first> <last>'");
    }
  }
  const auto nodes = expect_count("nodes");
  const auto edges = expect_count("edges");
  std::vector<std::pair<std::string, std::string>> edge_ids;
  edge_ids.reserve(edges);
  for (std::size_t i = 0; i < edges; ++i) {
    std::istringstream ss(next());
    std::string u, v;
    if (!(ss >> u >> v)) throw ParseError(source_name, line_no, "expected 'u v'");
    edge_ids.emplace_back(std::move(u), std::move(v));
  }
  if (next().rfind("#", 0) != 0) throw ParseError(source_name, line_no, "expected node attribute header");
  for (std::size_t i = 0; i < nodes; ++i) {
    std::istringstream ss(next());
    std::string id, field;
    int pi = 0;
    if (!(ss >> id >> pi >> field)) throw ParseError(source_name, line_no, "expected 'id is_pi field'");
    if (!net.ids.empty() && !(net.ids.back() < id)) {
      throw ParseError(source_name, line_no, "node ids not strictly sorted");
    }
    net.ids.push_back(std::move(id));
    net.is_pi.push_back(pi ? 1 : 0);
    net.fields.push_back(std::move(field));
  }
  net.adjacency.resize(nodes);
  for (const auto& [u, v] : edge_ids) {
    const auto a = net.find(u);
    const auto b = net.find(v);
    if (!a || !b || *a == *b) throw ParseError(source_name, 0, "edge " + u + " " + v + " is invalid");
    net.adjacency[*a].push_back(*b);
    net.adjacency[*b].push_back(*a);
  }
  for (auto& nbrs : net.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return net;
}

}  // namespace pistat
