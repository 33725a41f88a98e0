#include "pbexact/maxflow.hpp"

#include "pbexact/errors.hpp"

#include <limits>
#include <queue>

namespace pbexact {

MaxFlow::MaxFlow(int node_count) : adj_(node_count) {
  if (node_count <= 0) throw InputError("max-flow graph needs at least one node");
}

MaxFlow::EdgeRef MaxFlow::add_edge(int from, int to, BigInt capacity) {
  if (from < 0 || to < 0 || from >= (int)adj_.size() || to >= (int)adj_.size())
    throw InputError("max-flow edge endpoint out of range");
  if (capacity < 0) throw InputError("max-flow capacity must be non-negative");
  EdgeRef ref{from, (int)adj_[from].size()};
  adj_[from].push_back(Edge{to, capacity, capacity, (int)adj_[to].size()});
  adj_[to].push_back(Edge{from, BigInt(0), BigInt(0), (int)adj_[from].size() - 1});
  return ref;
}

bool MaxFlow::build_levels(int source, int sink) {
  level_.assign(adj_.size(), -1);
  std::queue<int> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop();
    for (const Edge& e : adj_[node]) {
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[node] + 1;
        queue.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

BigInt MaxFlow::push(int node, int sink, BigInt limit) {
  if (node == sink) return limit;
  for (size_t& i = iter_[node]; i < adj_[node].size(); ++i) {
    Edge& e = adj_[node][i];
    if (e.cap <= 0 || level_[e.to] != level_[node] + 1) continue;
    BigInt sent = push(e.to, sink, limit < e.cap ? limit : e.cap);
    if (sent > 0) {
      e.cap -= sent;
      adj_[e.to][e.rev].cap += sent;
      return sent;
    }
  }
  return BigInt(0);
}

BigInt MaxFlow::run(int source, int sink) {
  if (source == sink) throw InputError("max-flow source equals sink");
  BigInt total(0);
  // No single augmentation exceeds the source's outgoing capacity.
  BigInt cap_out(0);
  for (const Edge& e : adj_[source]) cap_out += e.cap;
  while (build_levels(source, sink)) {
    iter_.assign(adj_.size(), 0);
    while (true) {
      BigInt sent = push(source, sink, cap_out);
      if (sent == 0) break;
      total += sent;
    }
  }
  return total;
}

BigInt MaxFlow::flow_on(EdgeRef edge) const {
  const Edge& e = adj_.at(edge.node).at(edge.index);
  return e.initial_cap - e.cap;
}

} // namespace pbexact
