#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "vne/topology.hpp"

using namespace vne;

TEST_CASE("waxman default parameters give roughly 500 links") {
  WaxmanParams params;  // 100 nodes, alpha 0.5, beta 0.2
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto net = generate_waxman(params, seed);
    CHECK(net.node_count() == 100);
    CHECK(net.link_count() >= 350);
    CHECK(net.link_count() <= 650);
    CHECK(net.connected());
  }
}

TEST_CASE("two-node waxman always ends up with its single edge") {
  WaxmanParams params;
  params.n_nodes = 2;
  params.alpha = 1.0;
  params.beta = 1.0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto net = generate_waxman(params, seed);
    CHECK(net.link_count() == 1);
    CHECK(net.connected());
  }
}

TEST_CASE("waxman generation is a pure function of params and seed") {
  WaxmanParams params;
  params.n_nodes = 40;
  auto a = generate_waxman(params, 7);
  auto b = generate_waxman(params, 7);
  REQUIRE(a.node_count() == b.node_count());
  REQUIRE(a.link_count() == b.link_count());
  for (int i = 0; i < a.node_count(); ++i) {
    CHECK(a.node_capacity(i) == b.node_capacity(i));
    CHECK(a.node_available(i) == a.node_capacity(i));
  }
  for (int l = 0; l < a.link_count(); ++l) {
    CHECK(a.link_endpoints(l) == b.link_endpoints(l));
    CHECK(a.link_capacity(l) == b.link_capacity(l));
  }
  auto c = generate_waxman(params, 8);
  bool differs = a.link_count() != c.link_count();
  if (!differs) {
    for (int i = 0; i < a.node_count() && !differs; ++i)
      differs = a.node_capacity(i) != c.node_capacity(i);
  }
  CHECK(differs);
}

TEST_CASE("waxman edge probability decreases with distance") {
  double prev = 1.0;
  for (int k = 1; k <= 50; ++k) {
    const double d = 0.03 * k;
    const double p = waxman_edge_probability(d, 1.5, 0.5, 0.2);
    CHECK(p < prev);
    CHECK(p > 0.0);
    prev = p;
  }
}

TEST_CASE("vnr stream inter-arrival mean matches the rate") {
  VnrStreamParams params;
  params.count = 10000;
  params.arrival_rate = 0.04;
  auto vnrs = generate_vnr_stream(params, 42);
  REQUIRE(vnrs.size() == 10000);
  // Sample-mean oracle over the generated stream.
  double prev = 0.0, sum = 0.0;
  for (const auto& v : vnrs) {
    CHECK(v.arrival_time > prev);
    sum += v.arrival_time - prev;
    prev = v.arrival_time;
  }
  const double mean_gap = sum / static_cast<double>(vnrs.size());
  CHECK(mean_gap == doctest::Approx(25.0).epsilon(0.05));
}

TEST_CASE("vnr stream basic invariants") {
  VnrStreamParams params;
  params.count = 500;
  auto vnrs = generate_vnr_stream(params, 3);
  for (const auto& v : vnrs) {
    CHECK(v.lifetime > 0.0);
    CHECK(v.node_count() >= 2);
    CHECK(v.node_count() <= 10);
    for (double d : v.node_demands) {
      CHECK(d >= 0.0);
      CHECK(d <= 50.0);
    }
    CHECK_NOTHROW(v.validate());
  }
  auto again = generate_vnr_stream(params, 3);
  for (size_t i = 0; i < vnrs.size(); ++i) {
    CHECK(vnrs[i].arrival_time == again[i].arrival_time);
    CHECK(vnrs[i].node_demands == again[i].node_demands);
  }
}

TEST_CASE("two-node vnrs with certain edges") {
  VnrStreamParams params;
  params.count = 50;
  params.node_min = 2;
  params.node_max = 2;
  params.edge_prob = 1.0;
  auto vnrs = generate_vnr_stream(params, 5);
  for (const auto& v : vnrs) {
    CHECK(v.node_count() == 2);
    CHECK(v.link_count() == 1);
  }
}

TEST_CASE("vnr node order is a BFS from node zero") {
  VnrStreamParams params;
  params.count = 200;
  auto vnrs = generate_vnr_stream(params, 11);
  for (const auto& v : vnrs) {
    REQUIRE(v.node_order.front() == 0);
    // Every later node must neighbor some earlier node (connected requests).
    auto adj = v.adjacency();
    std::vector<char> seen(v.node_count(), 0);
    seen[0] = 1;
    for (size_t k = 1; k < v.node_order.size(); ++k) {
      const int cur = v.node_order[k];
      bool attached = false;
      for (int nb : adj[cur]) attached = attached || seen[nb];
      CHECK(attached);
      seen[cur] = 1;
    }
  }
}

TEST_CASE("edge-list topology round trip and synthetic real-world shapes") {
  // GEANT-like: 40 nodes, 64 edges; BRAIN-like: 161 nodes, 166 edges.
  struct Shape {
    int nodes, edges;
  };
  for (auto [n, e] : {Shape{40, 64}, Shape{161, 166}}) {
    std::string path = "topo_" + std::to_string(n) + ".txt";
    {
      std::ofstream out(path);
      for (int i = 0; i < n; ++i) out << "node " << i << " " << 100.0 << "\n";
      int written = 0;
      for (int i = 0; i < n && written < e; ++i) {
        out << i << " " << (i + 1) % n << " 50\n";  // ring
        ++written;
      }
      for (int i = 0; written < e && i + 2 < n; ++i) {
        out << i << " " << i + 2 << " 50\n";  // chords
        ++written;
      }
    }
    auto net = load_topology(path, TopologyFormat::EdgeList);
    CHECK(net.node_count() == n);
    CHECK(net.link_count() == e);
    std::remove(path.c_str());
  }
}

TEST_CASE("json topology round trip preserves everything") {
  WaxmanParams params;
  params.n_nodes = 12;
  auto net = generate_waxman(params, 9);
  save_topology(net, "topo_rt.json", TopologyFormat::Json);
  auto back = load_topology("topo_rt.json", TopologyFormat::Json);
  REQUIRE(back.node_count() == net.node_count());
  REQUIRE(back.link_count() == net.link_count());
  for (int i = 0; i < net.node_count(); ++i)
    CHECK(back.node_capacity(i) == doctest::Approx(net.node_capacity(i)).epsilon(1e-12));
  std::remove("topo_rt.json");
}

TEST_CASE("empty topology file is a parse error") {
  { std::ofstream out("topo_empty.txt"); }
  CHECK_THROWS(load_topology("topo_empty.txt", TopologyFormat::EdgeList));
  std::remove("topo_empty.txt");
}

TEST_CASE("capacity fill range applies when the file omits capacities") {
  {
    std::ofstream out("topo_fill.txt");
    out << "node 0\nnode 1\nnode 2\n0 1\n1 2\n";
  }
  auto net = load_topology("topo_fill.txt", TopologyFormat::EdgeList,
                           std::make_pair(50.0, 100.0), 4);
  for (int i = 0; i < net.node_count(); ++i) {
    CHECK(net.node_capacity(i) >= 50.0);
    CHECK(net.node_capacity(i) <= 100.0);
  }
  std::remove("topo_fill.txt");
}

TEST_CASE("physical network rejects malformed graphs") {
  CHECK_THROWS(PhysicalNetwork({10.0, 10.0}, {{0.0, 0.0, 5.0}}, 0));   // self loop
  CHECK_THROWS(PhysicalNetwork({10.0, 10.0}, {{0.0, 1.0, 5.0}, {1.0, 0.0, 5.0}}, 0));  // multi edge
  CHECK_THROWS(PhysicalNetwork({10.0, -1.0}, {}, 0));                  // bad capacity
}

TEST_CASE("vnr json round trip") {
  VnrStreamParams params;
  params.count = 3;
  auto vnrs = generate_vnr_stream(params, 21);
  for (const auto& v : vnrs) {
    auto text = vnr_to_json(v);
    auto back = vnr_from_json(text);
    CHECK(back.id == v.id);
    CHECK(back.node_demands == v.node_demands);
    CHECK(back.node_order == v.node_order);
    CHECK(back.lifetime == v.lifetime);
    REQUIRE(back.link_count() == v.link_count());
  }
}
