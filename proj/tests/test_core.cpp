#include <doctest.h>

#include <random>

#include "gdd/algebra.hpp"
#include "gdd/blockgen.hpp"
#include "gdd/digest.hpp"
#include "gdd/error.hpp"
#include "gdd/gddx.hpp"
#include "gdd/group_type.hpp"
#include "gdd/verify.hpp"
#include "support.hpp"

using namespace gdd;

namespace {

Design catalog_design(const std::string& name) { return expand(read_spec(testing::catalog_file(name).string())); }

ErrorKind kind_of_error(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::InternalError;
}

}  // namespace

TEST_CASE("group types are held in canonical form") {
  CHECK(GroupType::parse("4^5_10^2").str() == "10^2 4^5");
  CHECK(GroupType::parse("10^2 4^5") == GroupType::parse("4^5 10^2"));
  CHECK(GroupType::parse("3^4 3^1").str() == "3^5");
  CHECK(GroupType::parse("3^4_3^1").file_stem() == "3^5");
  CHECK(GroupType::parse("7").str() == "7^1");
  const auto t = GroupType::parse("2^6 5^1");
  CHECK(t.total_points() == 17);
  CHECK(t.num_groups() == 7);
  CHECK(t.sizes() == std::vector<int>{5, 2, 2, 2, 2, 2, 2});
  CHECK(t.with(2, 1).str() == "5^1 2^7");
  CHECK_THROWS_AS(GroupType::parse("x^y"), Error);
}

TEST_CASE("expected block counts follow from pair arithmetic") {
  CHECK(expected_block_count(GroupType::parse("4^5 10^2")) == 110);
  CHECK(expected_block_count(GroupType::parse("2^4")) == 4);
  CHECK(expected_block_count(GroupType::parse("14^6 8^1")) == 602);
  CHECK(expected_block_count(GroupType::parse("8^2 2^8")) == 72);
  CHECK(expected_block_count(GroupType::parse("38^9 11^1")) == 9291);
  CHECK(kind_of_error([] { expected_block_count(GroupType::parse("3^6 6^1")); }) == ErrorKind::NonIntegral);
}

TEST_CASE("a transversal design verifies and a deleted block leaves six uncovered pairs") {
  const Design td = transversal_design(4, 3);
  const auto ok = verify_gdd(td);
  CHECK(ok.ok);
  CHECK(ok.counted_blocks == 9);
  CHECK(ok.expected_blocks == 9);

  const Design broken = testing::without_block(td, 4);
  const auto r = verify_gdd(broken);
  CHECK_FALSE(r.ok);
  CHECK(r.total_failures == 6);
  REQUIRE(r.failures.size() == 6);
  auto blk = td.block(4);
  std::vector<std::pair<Point, Point>> expect;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) expect.emplace_back(blk[static_cast<std::size_t>(i)], blk[static_cast<std::size_t>(j)]);
  }
  std::sort(expect.begin(), expect.end());
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(r.failures[i].kind == FailureKind::Uncovered);
    CHECK(std::make_pair(r.failures[i].a, r.failures[i].b) == expect[i]);
  }
}

TEST_CASE("witness lists are capped but the total is exact") {
  Design d = catalog_design("4^5_10^2");
  Design sparse(d.v, d.groups, 4);
  for (std::size_t i = 0; i < d.num_blocks(); i += 2) sparse.add_block(d.block(i));
  const auto r = verify_gdd(sparse);
  CHECK(r.failures.size() == 10);
  CHECK(r.total_failures == 6 * 55);
  for (std::size_t i = 1; i < r.failures.size(); ++i) {
    CHECK(std::make_pair(r.failures[i - 1].a, r.failures[i - 1].b) < std::make_pair(r.failures[i].a, r.failures[i].b));
  }
  CHECK(verify_gdd(sparse, {0, 1}).failures.size() == 330);
  CHECK(verify_gdd(sparse, {3, 1}).failures.size() == 3);
}

TEST_CASE("duplicated blocks and same-group pairs are reported") {
  Design td = transversal_design(4, 3);
  Design dup = td;
  dup.add_block(td.block(0));
  const auto r = verify_gdd(dup);
  CHECK_FALSE(r.ok);
  CHECK(r.total_failures == 6);
  CHECK(r.failures.front().kind == FailureKind::Overcovered);
  CHECK(r.failures.front().count == 2);

  Design bad(td.v, td.groups, 4);
  for (std::size_t i = 1; i < td.num_blocks(); ++i) bad.add_block(td.block(i));
  bad.add_block({0, 1, 3, 6});  // 0 and 1 share group 0
  const auto s = verify_gdd(bad, {0, 1});
  CHECK(std::any_of(s.failures.begin(), s.failures.end(), [](const Failure& f) {
    return f.kind == FailureKind::SameGroupPair && f.a == 0 && f.b == 1;
  }));
}

TEST_CASE("malformed designs are rejected before counting") {
  Design d(5, {{0, 1}, {2, 3}, {4}}, 4);
  d.add_block({0, 2, 4, 7});
  CHECK(kind_of_error([&] { verify_gdd(d); }) == ErrorKind::MalformedDesign);
  Design overlap(4, {{0, 1}, {1, 2, 3}}, 4);
  CHECK(kind_of_error([&] { verify_gdd(overlap); }) == ErrorKind::MalformedDesign);
  Design gap(4, {{0, 1}, {2}}, 4);
  CHECK(kind_of_error([&] { verify_gdd(gap); }) == ErrorKind::MalformedDesign);
  CHECK(kind_of_error([&] { verify_dgdd(transversal_design(4, 3)); }) == ErrorKind::MissingHoles);
  CHECK(kind_of_error([&] { verify_resolution(transversal_design(4, 3)); }) == ErrorKind::MissingResolution);
}

TEST_CASE("the verifier agrees with a naive pair census under random corruption") {
  const Design base = catalog_design("8^2_2^8");
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    Design d(base.v, base.groups, 4);
    std::uniform_int_distribution<std::size_t> pick(0, base.num_blocks() - 1);
    const auto victim = pick(rng);
    for (std::size_t i = 0; i < base.num_blocks(); ++i) {
      if (i != victim) {
        d.add_block(base.block(i));
        continue;
      }
      std::vector<Point> b(base.block(i).begin(), base.block(i).end());
      std::uniform_int_distribution<int> pt(0, base.v - 1);
      int replacement;
      do {
        replacement = pt(rng);
      } while (std::find(b.begin(), b.end(), replacement) != b.end());
      b[static_cast<std::size_t>(trial % 4)] = replacement;
      d.add_block(b);
    }
    const auto naive = testing::naive_census(d);
    const auto r = verify_gdd(d, {0, 1});
    CHECK(r.ok == naive.ok());
    std::set<std::pair<int, int>> unc, over, same;
    for (const auto& f : r.failures) {
      auto& target = f.kind == FailureKind::Uncovered ? unc : f.kind == FailureKind::Overcovered ? over : same;
      target.insert({f.a, f.b});
    }
    CHECK(unc == naive.uncovered);
    CHECK(over == naive.overcovered);
    CHECK(same == naive.same_group);
  }
}

TEST_CASE("verification is invariant under relabeling points") {
  std::mt19937 rng(11);
  for (const char* name : {"4^5_10^2", "14^6_8^1", "8^5_2^4_5^1"}) {
    const Design d = catalog_design(name);
    const Design broken = testing::without_block(d, 3);
    for (int t = 0; t < 5; ++t) {
      CHECK(verify_gdd(testing::relabel(d, rng)).ok);
      const auto r = verify_gdd(testing::relabel(broken, rng));
      CHECK_FALSE(r.ok);
      CHECK(r.total_failures == 6);
    }
  }
}

TEST_CASE("every point lies in (v - |group|)/3 blocks") {
  for (const char* name : {"4^5_10^2", "14^6_8^1", "20^4_8^2_5^1"}) {
    const Design d = catalog_design(name);
    std::vector<int> rep(static_cast<std::size_t>(d.v), 0);
    for (Point p : d.flat_points()) ++rep[static_cast<std::size_t>(p)];
    for (const auto& g : d.groups) {
      for (Point p : g) CHECK(rep[static_cast<std::size_t>(p)] * 3 == d.v - static_cast<int>(g.size()));
    }
  }
}

TEST_CASE("threaded verification reports the same witnesses") {
  Design d = catalog_design("14^6_8^1");
  Design broken = testing::without_block(testing::without_block(d, 100), 7);
  const auto one = verify_gdd(broken, {0, 1});
  for (unsigned t : {2u, 3u, 8u}) CHECK(verify_gdd(broken, {0, t}) == one);
}

TEST_CASE("DGDD verification checks holes and cell sizes") {
  Design r = rgdd(4, 4);
  Design d(r.v, r.groups, 4);
  std::vector<PointSet> holes;
  for (std::size_t bi : (*r.resolution)[0]) holes.emplace_back(r.block(bi).begin(), r.block(bi).end());
  for (std::size_t i = 0; i < r.num_blocks(); ++i) {
    if (std::find((*r.resolution)[0].begin(), (*r.resolution)[0].end(), i) == (*r.resolution)[0].end()) d.add_block(r.block(i));
  }
  d.holes = holes;
  const auto ok = verify_dgdd(d);
  CHECK(ok.ok);
  CHECK(ok.expected_blocks == 12);

  Design with_hole_pair = d;
  with_hole_pair.add_block(r.block((*r.resolution)[0][0]));
  const auto bad = verify_dgdd(with_hole_pair);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failures.front().kind == FailureKind::SameHolePair);

  Design uneven = d;
  std::swap((*uneven.holes)[0][0], (*uneven.holes)[1][1]);
  const auto u = verify_dgdd(uneven, {0, 1});
  CHECK(std::any_of(u.failures.begin(), u.failures.end(), [](const Failure& f) { return f.kind == FailureKind::UnevenHole; }));
}

TEST_CASE("resolution verification flags non-parallel and missing classes") {
  Design r = rgdd(4, 4);
  CHECK(verify_resolution(r).ok);
  Design swapped = r;
  std::swap((*swapped.resolution)[0][0], (*swapped.resolution)[1][0]);
  CHECK_FALSE(verify_resolution(swapped).ok);
  Design dropped = r;
  (*dropped.resolution)[2].pop_back();
  const auto rep = verify_resolution(dropped, {0, 1});
  CHECK(std::any_of(rep.failures.begin(), rep.failures.end(), [](const Failure& f) { return f.kind == FailureKind::BlockUnassigned; }));
}

TEST_CASE("gddx serialization round-trips") {
  Design r = rgdd(4, 4);
  const auto text = serialize_gddx(r);
  const Design back = parse_gddx(text);
  CHECK(serialize_gddx(back) == text);
  CHECK(verify_resolution(back).ok);
  CHECK(design_digest(back) == design_digest(r));

  const Design parsed = parse_gddx("# comment\nv=4\ngroup: 0\ngroup: 1  # trailing\ngroup: 2, 3\n");
  CHECK(parsed.v == 4);
  CHECK(parsed.groups.size() == 3);
  CHECK(kind_of_error([] { parse_gddx("v=4\ngroup: 0\nbogus: 1\n"); }) == ErrorKind::SyntaxError);
  try {
    parse_gddx("v=4\n\nwhat: 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("digests are SHA-256 of the canonical text") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  Design a = transversal_design(4, 3);
  Design b = a;
  std::reverse(b.groups.begin(), b.groups.end());
  CHECK(design_digest(a) == design_digest(b));
}
