#pragma once

// Multicast over an acyclic directed multigraph with linear network coding
// over GF(2). Packets are GF(2^m) symbols; a binary coefficient either passes
// a packet into an XOR or drops it.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wiresafe/gf.hpp"
#include "wiresafe/random.hpp"

namespace wiresafe {

struct Edge {
  int id;
  std::size_t tail;
  std::size_t head;
};

/// Edge as given by the user, endpoints by node name.
struct EdgeSpec {
  int id;
  std::string from;
  std::string to;
};

class Network {
 public:
  Network(std::vector<std::string> nodes, std::vector<EdgeSpec> edges, const std::string& source,
          const std::vector<std::string>& sinks);

  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  /// Sorted by edge id.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t source() const noexcept { return source_; }
  const std::vector<std::size_t>& sinks() const noexcept { return sinks_; }

  std::size_t node_index(const std::string& name) const;
  /// Position of edge `id` in edges(); throws if absent.
  std::size_t edge_index(int id) const;
  /// Edge positions, in edge-id order.
  const std::vector<std::size_t>& in_edges(std::size_t node) const { return in_.at(node); }
  const std::vector<std::size_t>& out_edges(std::size_t node) const { return out_.at(node); }

  /// Nodes in topological order, or nullopt when the graph has a cycle.
  std::optional<std::vector<std::size_t>> topological_order() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::size_t source_ = 0;
  std::vector<std::size_t> sinks_;
  std::vector<std::vector<std::size_t>> in_;
  std::vector<std::vector<std::size_t>> out_;
};

/// Butterfly with the two upper relays merged into the source: seven edges,
/// source s, sinks t1 and t2, bottleneck c -> d. Mincut 2.
Network butterfly_network();
/// s -> v1 -> ... -> t with `hops` edges.
Network line_network(std::size_t hops = 3);
/// s -> a -> t, s -> b -> t. Mincut 2.
Network diamond_network();
/// "butterfly", "line" or "diamond".
Network builtin_network(const std::string& name);

/// Unit-capacity max-flow from the source to `sink` (augmenting paths).
std::size_t max_flow(const Network& net, std::size_t sink);
/// Minimum over all sinks of max_flow.
std::size_t mincut(const Network& net);

/// Linear network code over GF(2) for n source packets.
///
/// Local coefficients of an edge are a bit mask over its inputs: for edges
/// leaving the source the inputs are the n message packets, otherwise the
/// in-edges of the tail node in edge-id order. At most 64 inputs per node.
class LinearNetworkCode {
 public:
  /// `local` is indexed by edge position. Throws on a cyclic network.
  LinearNetworkCode(Network net, std::size_t n, std::vector<std::uint64_t> local);

  const Network& network() const noexcept { return net_; }
  std::size_t n() const noexcept { return n_; }
  std::uint64_t local(std::size_t edge) const { return local_.at(edge); }
  /// Global coding vector of an edge position, bit i = coefficient of X_i.
  std::uint64_t global(std::size_t edge) const { return global_.at(edge); }
  const std::vector<std::size_t>& order() const noexcept { return edge_order_; }

  /// Rows are the global vectors of the sink's in-edges, in edge-id order.
  BaseMatrix transfer_matrix(std::size_t sink) const;
  bool sink_feasible(std::size_t sink) const;

 private:
  Network net_;
  std::size_t n_;
  std::vector<std::uint64_t> local_;
  std::vector<std::uint64_t> global_;
  std::vector<std::size_t> edge_order_;  // edge positions in processing order
};

/// Local coefficients drawn uniformly from GF(2), edge by edge in id order.
LinearNetworkCode assign_random_code(const Network& net, std::size_t n, std::uint64_t seed);

/// Every sink's transfer matrix has rank n.
bool is_feasible(const LinearNetworkCode& code);

struct Transmission {
  /// Packet on each edge position.
  std::vector<Word> edge_packets;
  /// Received vector of each sink, in net.sinks() order.
  std::vector<ExtVector> received;
};

/// Edge-by-edge simulation in topological order.
Transmission transmit(const LinearNetworkCode& code, const ExtVector& x);

/// Recovers X from a sink's received vector; throws SingularMatrix if the
/// sink's transfer matrix has rank below n.
ExtVector sink_decode(const LinearNetworkCode& code, std::size_t sink, const ExtVector& received);

/// Rows are the global vectors of the tapped edges, in edge-id order.
/// May be rank deficient.
BaseMatrix wiretap_matrix(const LinearNetworkCode& code, std::span<const int> edge_ids);

/// Packet carrying its global coding vector as a header.
struct CodedPacket {
  std::uint64_t header = 0;
  Word payload = 0;

  /// Header bits (n) followed by payload bits (m), each 0 or 1.
  std::vector<std::uint8_t> bits(std::size_t n, int m) const;
  friend bool operator==(const CodedPacket&, const CodedPacket&) = default;
};

/// Edge packets when the source prefixes packet i with the unit vector e_i
/// and every node applies its local coefficients to whole packets.
std::vector<CodedPacket> attach_headers(const LinearNetworkCode& code, const ExtVector& x);

/// Packets seen by a sink, in edge-id order.
std::vector<CodedPacket> sink_packets(const LinearNetworkCode& code, std::span<const CodedPacket> edge_packets,
                                      std::size_t sink);

/// Recovers X from received packets alone, using only their headers.
ExtVector decode_from_headers(std::span<const CodedPacket> packets, std::size_t n, const FieldSpec& spec);

}  // namespace wiresafe
