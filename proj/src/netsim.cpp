#include "wiresafe/netsim.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <set>

namespace wiresafe {

Network::Network(std::vector<std::string> nodes, std::vector<EdgeSpec> edges, const std::string& source,
                 const std::vector<std::string>& sinks)
    : nodes_(std::move(nodes)) {
  std::set<std::string> names;
  for (const auto& n : nodes_)
    if (!names.insert(n).second) throw Error("duplicate node '" + n + "'");
  source_ = node_index(source);
  if (sinks.empty()) throw Error("network needs at least one sink");
  for (const auto& s : sinks) {
    const auto idx = node_index(s);
    if (idx == source_) throw Error("sink '" + s + "' is the source");
    if (std::find(sinks_.begin(), sinks_.end(), idx) != sinks_.end()) throw Error("duplicate sink '" + s + "'");
    sinks_.push_back(idx);
  }
  std::sort(edges.begin(), edges.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].id == edges[i - 1].id) throw Error("duplicate edge id " + std::to_string(edges[i].id));
    edges_.push_back({edges[i].id, node_index(edges[i].from), node_index(edges[i].to)});
  }
  in_.assign(nodes_.size(), {});
  out_.assign(nodes_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    out_[edges_[e].tail].push_back(e);
    in_[edges_[e].head].push_back(e);
  }
}

std::size_t Network::node_index(const std::string& name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) throw Error("unknown node '" + name + "'");
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t Network::edge_index(int id) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), id, [](const Edge& e, int v) { return e.id < v; });
  if (it == edges_.end() || it->id != id) throw Error("unknown edge id " + std::to_string(id));
  return static_cast<std::size_t>(it - edges_.begin());
}

std::optional<std::vector<std::size_t>> Network::topological_order() const {
  std::vector<std::size_t> indegree(nodes_.size(), 0);
  for (const auto& e : edges_) ++indegree[e.head];
  std::deque<std::size_t> ready;
  for (std::size_t v = 0; v < nodes_.size(); ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto v = ready.front();
    ready.pop_front();
    order.push_back(v);
    for (auto e : out_[v])
      if (--indegree[edges_[e].head] == 0) ready.push_back(edges_[e].head);
  }
  if (order.size() != nodes_.size()) return std::nullopt;
  return order;
}

Network butterfly_network() {
  return Network({"s", "c", "d", "t1", "t2"},
                 {{0, "s", "t1"}, {1, "s", "c"}, {2, "s", "c"}, {3, "s", "t2"}, {4, "c", "d"}, {5, "d", "t1"}, {6, "d", "t2"}},
                 "s", {"t1", "t2"});
}

Network line_network(std::size_t hops) {
  if (hops == 0) throw Error("line network needs at least one hop");
  std::vector<std::string> nodes{"s"};
  for (std::size_t i = 1; i < hops; ++i) nodes.push_back("v" + std::to_string(i));
  nodes.push_back("t");
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < hops; ++i) edges.push_back({static_cast<int>(i), nodes[i], nodes[i + 1]});
  return Network(nodes, edges, "s", {"t"});
}

Network diamond_network() {
  return Network({"s", "a", "b", "t"}, {{0, "s", "a"}, {1, "s", "b"}, {2, "a", "t"}, {3, "b", "t"}}, "s", {"t"});
}

Network builtin_network(const std::string& name) {
  if (name == "butterfly") return butterfly_network();
  if (name == "line") return line_network();
  if (name == "diamond") return diamond_network();
  throw Error("unknown built-in topology '" + name + "'");
}

std::size_t max_flow(const Network& net, std::size_t sink) {
  const auto& edges = net.edges();
  // residual flow per edge: 0 or 1
  std::vector<int> flow(edges.size(), 0);
  std::size_t total = 0;
  const std::size_t nv = net.nodes().size();
  while (true) {
    // BFS over residual arcs; parent stores (edge, forward?)
    std::vector<std::optional<std::pair<std::size_t, bool>>> parent(nv);
    std::vector<bool> seen(nv, false);
    std::deque<std::size_t> queue{net.source()};
    seen[net.source()] = true;
    while (!queue.empty() && !seen[sink]) {
      const auto v = queue.front();
      queue.pop_front();
      for (auto e : net.out_edges(v)) {
        const auto w = edges[e].head;
        if (flow[e] == 0 && !seen[w]) {
          seen[w] = true;
          parent[w] = {e, true};
          queue.push_back(w);
        }
      }
      for (auto e : net.in_edges(v)) {
        const auto w = edges[e].tail;
        if (flow[e] == 1 && !seen[w]) {
          seen[w] = true;
          parent[w] = {e, false};
          queue.push_back(w);
        }
      }
    }
    if (!seen[sink]) return total;
    for (auto v = sink; v != net.source();) {
      const auto [e, forward] = *parent[v];
      flow[e] = forward ? 1 : 0;
      v = forward ? edges[e].tail : edges[e].head;
    }
    ++total;
  }
}

std::size_t mincut(const Network& net) {
  std::size_t best = SIZE_MAX;
  for (auto t : net.sinks()) best = std::min(best, max_flow(net, t));
  return best;
}

// -- linear network code -------------------------------------------------------

namespace {

std::size_t input_count(const Network& net, std::size_t edge, std::size_t n) {
  const auto tail = net.edges()[edge].tail;
  return tail == net.source() ? n : net.in_edges(tail).size();
}

std::vector<std::size_t> processing_order(const Network& net) {
  auto order = net.topological_order();
  if (!order) throw Error("network has a cycle; only acyclic networks are supported");
  std::vector<std::size_t> edges;
  for (auto v : *order)
    for (auto e : net.out_edges(v)) edges.push_back(e);
  return edges;
}

std::uint64_t input_mask(std::size_t count) {
  return count >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << count) - 1);
}

// Combines the inputs selected by `coeffs`, where input i is `source_value(i)`
// for source edges and the value on the i-th in-edge of the tail otherwise.
template <typename T, typename SourceValue>
T combine(const Network& net, std::size_t edge, std::uint64_t coeffs, const std::vector<T>& edge_values,
          SourceValue&& source_value) {
  T acc{};
  const auto tail = net.edges()[edge].tail;
  const bool from_source = tail == net.source();
  for (; coeffs != 0; coeffs &= coeffs - 1) {
    const auto i = static_cast<std::size_t>(std::countr_zero(coeffs));
    acc ^= from_source ? source_value(i) : edge_values[net.in_edges(tail)[i]];
  }
  return acc;
}

// Solves rows * X = y over GF(2) acting on GF(2^m) packets.
ExtVector solve_binary_system(std::vector<std::uint64_t> rows, std::vector<Word> y, std::size_t n,
                              const FieldSpec& spec) {
  std::size_t r = 0;
  std::vector<std::size_t> pivot_row(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::uint64_t bit = std::uint64_t{1} << c;
    std::size_t p = r;
    while (p < rows.size() && !(rows[p] & bit)) ++p;
    if (p == rows.size()) throw SingularMatrix("transfer matrix has rank below n; the sink cannot decode");
    std::swap(rows[p], rows[r]);
    std::swap(y[p], y[r]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != r && (rows[i] & bit)) {
        rows[i] ^= rows[r];
        y[i] ^= y[r];
      }
    }
    pivot_row[c] = r++;
  }
  ExtVector x(spec, n);
  for (std::size_t c = 0; c < n; ++c) x[c] = y[pivot_row[c]];
  return x;
}

}  // namespace

LinearNetworkCode::LinearNetworkCode(Network net, std::size_t n, std::vector<std::uint64_t> local)
    : net_(std::move(net)), n_(n), local_(std::move(local)) {
  if (n_ == 0 || n_ > 64) throw Error("number of source packets must lie in [1, 64]");
  if (local_.size() != net_.edge_count()) throw Error("one local coefficient vector per edge required");
  for (std::size_t e = 0; e < local_.size(); ++e) {
    const auto inputs = input_count(net_, e, n_);
    if (inputs > 64) throw Error("node has more than 64 inputs");
    if (local_[e] & ~input_mask(inputs))
      throw Error("local coefficients of edge " + std::to_string(net_.edges()[e].id) + " exceed its input count");
  }
  edge_order_ = processing_order(net_);
  global_.assign(net_.edge_count(), 0);
  for (auto e : edge_order_)
    global_[e] = combine(net_, e, local_[e], global_, [](std::size_t i) { return std::uint64_t{1} << i; });
}

BaseMatrix LinearNetworkCode::transfer_matrix(std::size_t sink) const {
  BaseMatrix a(0, n_);
  for (auto e : net_.in_edges(sink)) a.append_row(global_[e]);
  return a;
}

bool LinearNetworkCode::sink_feasible(std::size_t sink) const { return rank_base_matrix(transfer_matrix(sink)) == n_; }

LinearNetworkCode assign_random_code(const Network& net, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint64_t> local(net.edge_count(), 0);
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    const auto inputs = input_count(net, e, n);
    for (std::size_t i = 0; i < inputs; ++i)
      if (draw_bit(rng)) local[e] |= std::uint64_t{1} << i;
  }
  return LinearNetworkCode(net, n, std::move(local));
}

bool is_feasible(const LinearNetworkCode& code) {
  const auto& sinks = code.network().sinks();
  return std::all_of(sinks.begin(), sinks.end(), [&](auto t) { return code.sink_feasible(t); });
}

Transmission transmit(const LinearNetworkCode& code, const ExtVector& x) {
  if (x.size() != code.n()) throw Error("transmit: expected " + std::to_string(code.n()) + " source packets");
  const Network& net = code.network();
  Transmission out;
  out.edge_packets.assign(net.edge_count(), 0);
  for (auto e : code.order())
    out.edge_packets[e] = combine(net, e, code.local(e), out.edge_packets, [&](std::size_t i) { return x[i]; });
  for (auto t : net.sinks()) {
    std::vector<Word> vals;
    for (auto e : net.in_edges(t)) vals.push_back(out.edge_packets[e]);
    out.received.emplace_back(x.spec(), std::move(vals));
  }
  return out;
}

ExtVector sink_decode(const LinearNetworkCode& code, std::size_t sink, const ExtVector& received) {
  const auto a = code.transfer_matrix(sink);
  if (received.size() != a.rows()) throw Error("sink_decode: received vector length does not match in-degree");
  std::vector<std::uint64_t> rows(a.row_words().begin(), a.row_words().end());
  std::vector<Word> y(received.values().begin(), received.values().end());
  return solve_binary_system(std::move(rows), std::move(y), code.n(), received.spec());
}

BaseMatrix wiretap_matrix(const LinearNetworkCode& code, std::span<const int> edge_ids) {
  std::vector<int> ids(edge_ids.begin(), edge_ids.end());
  std::sort(ids.begin(), ids.end());
  BaseMatrix b(0, code.n());
  for (auto id : ids) b.append_row(code.global(code.network().edge_index(id)));
  return b;
}

std::vector<std::uint8_t> CodedPacket::bits(std::size_t n, int m) const {
  std::vector<std::uint8_t> out;
  out.reserve(n + static_cast<std::size_t>(m));
  for (std::size_t i = 0; i < n; ++i) out.push_back(static_cast<std::uint8_t>((header >> i) & 1U));
  for (int i = 0; i < m; ++i) out.push_back(static_cast<std::uint8_t>((payload >> i) & 1U));
  return out;
}

namespace {
CodedPacket& operator^=(CodedPacket& a, const CodedPacket& b) {
  a.header ^= b.header;
  a.payload ^= b.payload;
  return a;
}
}  // namespace

std::vector<CodedPacket> attach_headers(const LinearNetworkCode& code, const ExtVector& x) {
  if (x.size() != code.n()) throw Error("attach_headers: expected " + std::to_string(code.n()) + " source packets");
  const Network& net = code.network();
  std::vector<CodedPacket> packets(net.edge_count());
  for (auto e : code.order())
    packets[e] = combine(net, e, code.local(e), packets,
                         [&](std::size_t i) { return CodedPacket{std::uint64_t{1} << i, x[i]}; });
  return packets;
}

std::vector<CodedPacket> sink_packets(const LinearNetworkCode& code, std::span<const CodedPacket> edge_packets,
                                      std::size_t sink) {
  std::vector<CodedPacket> out;
  for (auto e : code.network().in_edges(sink)) out.push_back(edge_packets[e]);
  return out;
}

ExtVector decode_from_headers(std::span<const CodedPacket> packets, std::size_t n, const FieldSpec& spec) {
  std::vector<std::uint64_t> rows;
  std::vector<Word> y;
  for (const auto& p : packets) {
    rows.push_back(p.header);
    y.push_back(p.payload);
  }
  return solve_binary_system(std::move(rows), std::move(y), n, spec);
}

}  // namespace wiresafe
