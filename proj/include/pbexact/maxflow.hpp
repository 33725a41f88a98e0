#pragma once
#include "pbexact/rational.hpp"

#include <vector>

namespace pbexact {

// Dinic max-flow with arbitrary-precision integer capacities.
class MaxFlow {
public:
  explicit MaxFlow(int node_count);

  struct EdgeRef {
    int node;
    int index;
  };

  EdgeRef add_edge(int from, int to, BigInt capacity);
  BigInt run(int source, int sink);
  BigInt flow_on(EdgeRef edge) const; // valid after run

private:
  struct Edge {
    int to;
    BigInt cap;
    BigInt initial_cap;
    int rev;
  };

  bool build_levels(int source, int sink);
  BigInt push(int node, int sink, BigInt limit);

  std::vector<std::vector<Edge>> adj_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
};

} // namespace pbexact
