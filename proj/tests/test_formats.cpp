#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "subrank/io.hpp"
#include "subrank/sampling.hpp"

using namespace subrank;

TEST_CASE("edge list text round trip") {
  hg::KGraph g = hg::type_graph({{2, 2}});
  std::stringstream buf;
  io::write_edge_list_text(buf, g);
  hg::KGraph back = io::read_edge_list_text(buf);
  CHECK(back.order == g.order);
  CHECK(back.sizes == g.sizes);
  CHECK(back.edges == g.edges);
}

TEST_CASE("edge list text parses the documented layout") {
  std::stringstream in("3 3 3 3\n1 1 1\n2 2 2\n3 3 3\n");
  hg::KGraph g = io::read_edge_list_text(in);
  CHECK(g.order == 3);
  CHECK(g.edge_count() == 3);
  std::stringstream bad("3 3 3 3\n1 1\n");
  CHECK_THROWS_AS(io::read_edge_list_text(bad), std::invalid_argument);
  std::stringstream oob("2 2 2\n1 3\n");
  CHECK_THROWS_AS(io::read_edge_list_text(oob), std::invalid_argument);
}

TEST_CASE("edge list JSON round trip") {
  hg::KGraph g = hg::type_graph({{2, 1}});
  std::stringstream buf;
  io::write_edge_list_json(buf, g);
  hg::KGraph back = io::read_edge_list_json(buf);
  CHECK(back.order == g.order);
  CHECK(back.sizes == g.sizes);
  CHECK(back.edges == g.edges);
}

TEST_CASE("subspace text canonicalizes on load") {
  std::stringstream in("4 3\n1100\n0011\n1111\n");  // third row is dependent
  gf2::Subspace v = io::read_subspace_text(in);
  CHECK(v.ambient() == 4);
  CHECK(v.dim() == 2);
  std::stringstream buf;
  io::write_subspace_text(buf, v);
  gf2::Subspace back = io::read_subspace_text(buf);
  CHECK(back == v);

  std::stringstream bad("4 1\n110\n");
  CHECK_THROWS_AS(io::read_subspace_text(bad), std::invalid_argument);
}

TEST_CASE("subspace round trips preserve canonical form") {
  std::mt19937_64 rng(sampling::derive_seed(1, "subspace-io"));
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 20);
    gf2::Subspace v = sampling::random_subspace(rng, n, static_cast<int>(rng() % (n + 1)));
    std::stringstream buf;
    io::write_subspace_text(buf, v);
    CHECK(io::read_subspace_text(buf) == v);
  }
}

TEST_CASE("alpha map files") {
  cw::AlphaMaps alpha = cw::alpha_for_type_graph({{2, 2}});
  std::stringstream buf;
  io::write_alpha_maps(buf, alpha);
  cw::AlphaMaps back = io::read_alpha_maps(buf);
  REQUIRE(back.maps.size() == alpha.maps.size());
  CHECK(back.maps == alpha.maps);

  // Unicode arrows are accepted too.
  std::stringstream uni("1: 1\xe2\x86\x92" "5 2\xe2\x86\x92" "7\n2: 1->-3 2->-4\n");
  cw::AlphaMaps u = io::read_alpha_maps(uni);
  REQUIRE(u.maps.size() == 2);
  CHECK(u.maps[0] == std::vector<long long>{5, 7});
  CHECK(u.maps[1] == std::vector<long long>{-3, -4});

  std::stringstream bad("1: nonsense\n");
  CHECK_THROWS_AS(io::read_alpha_maps(bad), std::invalid_argument);
}
