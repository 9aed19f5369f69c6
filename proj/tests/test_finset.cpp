#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "setnorm/finset.hpp"
#include "setnorm/rng.hpp"

using namespace setnorm;

TEST_CASE("is_block basics") {
  CHECK(is_block({FinSet{0, 1}, FinSet{2}, FinSet{5, 7}}));
  CHECK_FALSE(is_block({FinSet{0, 3}, FinSet{2}}));
  CHECK_FALSE(is_block({FinSet{4}, FinSet{}, FinSet{9}}));
  CHECK(is_block({}));
  CHECK(is_block({FinSet{3}}));
}

TEST_CASE("n_delta_position examples") {
  auto w = n_delta_position(FinSet{0, 1, 5}, FinSet{0, 1, 7}, 0);
  REQUIRE(w.has_value());
  CHECK(w->root == FinSet{0, 1});
  CHECK(w->tail == FinSet{});

  CHECK_FALSE(n_delta_position(FinSet{1, 2}, FinSet{2, 3}, 0).has_value());
  auto w2 = n_delta_position(FinSet{1, 2}, FinSet{2, 3}, 1);
  REQUIRE(w2.has_value());
  CHECK(w2->root == FinSet{});
  CHECK(w2->tail == FinSet{2});

  auto w3 = n_delta_position(FinSet{3}, FinSet{3}, 0);
  REQUIRE(w3.has_value());
  CHECK(w3->root == FinSet{3});
  CHECK(w3->tail == FinSet{});
}

TEST_CASE("n_delta_position properties") {
  Rng rng(7);
  auto rand_set = [&](Rng& r) {
    return FinSet(r.subset(10, 1, 2));
  };
  for (int it = 0; it < 500; ++it) {
    FinSet s = rand_set(rng), t = rand_set(rng);
    for (std::uint32_t n = 0; n < 4; ++n) {
      auto st = n_delta_position(s, t, n);
      auto ts = n_delta_position(t, s, n);
      CHECK(st.has_value() == ts.has_value());  // symmetry
      if (st) {
        // witness really witnesses
        CHECK(st->root.set_union(st->tail) == s.set_intersection(t));
        CHECK(st->root.initial_segment_of(s));
        CHECK(st->root.initial_segment_of(t));
        CHECK(st->root.entirely_below(st->tail));
        CHECK(st->tail.size() <= n);
        CHECK(n_delta_position(s, t, n + 1).has_value());  // monotone in n
      }
    }
    if (s.set_intersection(t).empty()) {
      auto w = n_delta_position(s, t, 0);
      REQUIRE(w.has_value());
      CHECK(w->root == FinSet{});
      CHECK(w->tail == FinSet{});
    }
    std::uint32_t inter = static_cast<std::uint32_t>(s.set_intersection(t).size());
    CHECK(n_delta_position(s, t, inter).has_value());
    CHECK(min_delta_parameter(s, t) <= inter);
    CHECK(n_delta_position(s, t, min_delta_parameter(s, t)).has_value());
    if (min_delta_parameter(s, t) > 0)
      CHECK_FALSE(n_delta_position(s, t, min_delta_parameter(s, t) - 1).has_value());
  }
}

TEST_CASE("delta_system_extract examples") {
  {
    auto d = delta_system_extract({FinSet{0, 1}, FinSet{0, 2}, FinSet{0, 3}, FinSet{0, 4}});
    CHECK(d.root == FinSet{0});
    CHECK(d.indices.size() == 4);
  }
  {
    auto d = delta_system_extract({FinSet{1}, FinSet{2}, FinSet{3}});
    CHECK(d.root == FinSet{});
    CHECK(d.indices.size() == 3);
  }
  {
    auto d = delta_system_extract({FinSet{0, 1}, FinSet{1, 2}, FinSet{0, 2}, FinSet{0, 3}});
    CHECK(d.root == FinSet{0});
    REQUIRE(d.indices.size() == 3);
    CHECK(d.indices == std::vector<std::size_t>{0, 2, 3});
  }
}

TEST_CASE("delta_system sunflower-style lower bound at tiny sizes") {
  // Any 9 = 2*2^2+1 sets of size <= 2 contain a Delta-system of 3.
  Rng rng(11);
  for (int it = 0; it < 200; ++it) {
    std::vector<FinSet> list;
    for (int i = 0; i < 9; ++i) {
      std::uint32_t a = static_cast<std::uint32_t>(rng.below(6));
      std::uint32_t b = static_cast<std::uint32_t>(rng.below(6));
      if (a == b)
        list.push_back(FinSet{a});
      else
        list.push_back(a < b ? FinSet{a, b} : FinSet{b, a});
    }
    auto d = delta_system_extract(list);
    CHECK(d.indices.size() >= 3);
    for (std::size_t p = 0; p < d.indices.size(); ++p)
      for (std::size_t q = p + 1; q < d.indices.size(); ++q)
        CHECK(list[d.indices[p]].set_intersection(list[d.indices[q]]) == d.root);
  }
}

TEST_CASE("theta_map and slice") {
  auto m = theta_map(FinSet{2, 5}, FinSet{0, 9});
  REQUIRE(m.size() == 2);
  CHECK(m[0] == std::pair<std::uint32_t, std::uint32_t>{2, 0});
  CHECK(m[1] == std::pair<std::uint32_t, std::uint32_t>{5, 9});

  auto id = theta_map(FinSet{1, 4}, FinSet{1, 4});
  CHECK(id[0].first == id[0].second);
  CHECK(id[1].first == id[1].second);

  CHECK(slice(FinSet{3, 6, 9}, FinSet{0, 2}) == FinSet{3, 9});
  CHECK_THROWS(theta_map(FinSet{1}, FinSet{1, 2}));

  // composition with inverse is the identity
  FinSet a{1, 3, 7}, b{0, 5, 6};
  for (std::uint32_t x : a.elems())
    CHECK(theta_apply(b, a, theta_apply(a, b, x)) == x);
}

TEST_CASE("shift_related") {
  CHECK(shift_related(FinSet{1, 4, 7}, FinSet{4, 7, 10}));
  CHECK_FALSE(shift_related(FinSet{1, 4, 7}, FinSet{4, 8}));
  CHECK(shift_related(FinSet{5}, FinSet{0, 2}));
  CHECK(shift_related(FinSet{5}, FinSet{}));
  CHECK_THROWS(shift_related(FinSet{}, FinSet{1}));
}

TEST_CASE("subset enumeration") {
  FinSet g = FinSet::segment(5);
  CHECK(subsets_of_size(g, 0).size() == 1);
  CHECK(subsets_of_size(g, 2).size() == 10);
  CHECK(subsets_of_size(g, 5).size() == 1);
  CHECK(subsets_of_size(g, 6).empty());
  CHECK(all_subsets(g).size() == 32);
}
