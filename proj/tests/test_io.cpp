#include <doctest.h>

#include <cstdio>
#include <random>

#include "pgroup/canonicalize.hpp"
#include "pgroup/io.hpp"

using namespace pgroup;

namespace {

AlternatingMap random_form(const PrimeField& F, int n, int w, std::mt19937_64& rng) {
  Mat pairs(pair_count(n), w);
  for (int r = 0; r < pairs.rows(); ++r) pairs.row(r) = random_vector(F, w, rng).transpose();
  return AlternatingMap(F, n, w, pairs);
}

int parse_error_line(std::string_view text) {
  try {
    parse_group(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("form round trip") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5, 7}) {
    const PrimeField F(p);
    for (int t = 0; t < 20; ++t) {
      const AlternatingMap B = random_form(F, 2 + t % 5, 1 + t % 4, rng);
      CHECK(parse_form(write_form(B)) == B);
    }
  }
  const AlternatingMap g3 = full_lambda2(PrimeField(3), 4);
  CHECK(write_form(g3) ==
        "3 4 6\n"
        "0 1 1 0 0 0 0 0\n"
        "0 2 0 1 0 0 0 0\n"
        "0 3 0 0 1 0 0 0\n"
        "1 2 0 0 0 1 0 0\n"
        "1 3 0 0 0 0 1 0\n"
        "2 3 0 0 0 0 0 1\n");
}

TEST_CASE("group round trip keeps the cocycle") {
  const PrimeField F2(2);
  const AlternatingMap B = quotient(full_lambda2(F2, 4), canonical_plane(F2));
  const GroupModel collection(B);
  CHECK(write_group(collection) == write_form(B));
  CHECK(parse_group(write_group(collection)).cocycle() == collection.cocycle());

  const GroupModel upper(B, CocycleConvention::Upper);
  const std::string text = write_group(upper);
  CHECK(text.find("cocycle\n") != std::string::npos);
  const GroupModel back = parse_group(text);
  CHECK(back.form() == B);
  CHECK(back.cocycle() == upper.cocycle());

  Mat lower = convention_cocycle(B, CocycleConvention::Collection);
  lower.row(0) = Vec::Unit(4, 3).transpose();
  lower.row(5) = Vec::Unit(4, 1).transpose();
  const GroupModel squares(B, lower);
  CHECK(parse_group(write_group(squares)).cocycle() == squares.cocycle());

  const GroupModel heis = GroupModel::heisenberg(ExtField(PrimeField(3), 2));
  CHECK(parse_group(write_group(heis)).cocycle() == heis.cocycle());
}

TEST_CASE("comments, blank lines and reduction mod p") {
  const AlternatingMap B = parse_form(
      "# a comment\n"
      "\n"
      "3 3 1   # header\n"
      "0 1 4\n"
      "   1 2 -1\n");
  CHECK(B.value(0, 1) == Vec::Constant(1, 1));
  CHECK(B.value(1, 2) == Vec::Constant(1, 2));
  CHECK(B.value(0, 2) == Vec::Zero(1));
  CHECK(B.value(2, 1) == Vec::Constant(1, 1));
}

TEST_CASE("a form file is a group file") {
  const GroupModel G = parse_group("3 2 1\n0 1 1\n");
  CHECK(G.has_default_cocycle());
  CHECK(G.commutator(G.generator(0), G.generator(1)) == G.central(Vec::Constant(1, 1)));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(parse_error_line("") == 0);
  CHECK(parse_error_line("# only\n") == 0);
  CHECK(parse_error_line("3 4\n") == 1);
  CHECK(parse_error_line("4 2 1\n") == 1);
  CHECK(parse_error_line("3 2 x\n") == 1);
  CHECK(parse_error_line("3 99 1\n") == 1);
  CHECK(parse_error_line("3 2 1\n0 1\n") == 2);
  CHECK(parse_error_line("3 2 1\n\n1 0 1\n") == 3);
  CHECK(parse_error_line("3 2 1\n0 2 1\n") == 2);
  CHECK(parse_error_line("3 2 1\n0 1 1\n0 1 2\n") == 3);
  CHECK(parse_error_line("3 2 1\n0 1 1.5\n") == 2);
  CHECK(parse_error_line("2 2 1\n0 1 1\ncocycle\n0 1 1\n") == 4);
  CHECK(parse_error_line("2 2 1\ncocycle\n1 0 1\n1 0 1\n") == 4);
  CHECK(parse_error_line("2 2 1\ncocycle\ncocycle\n") == 3);
  CHECK_THROWS_AS(parse_form("2 2 1\ncocycle\n"), ParseError);
}

TEST_CASE("files") {
  const std::string path = "pgroup_io_test.txt";
  const AlternatingMap B = full_lambda2(PrimeField(5), 3);
  write_text_file(path, write_form(B));
  CHECK(parse_form(read_text_file(path)) == B);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("/nonexistent/dir/file"), std::runtime_error);
}

TEST_CASE("matrix formatting") {
  Mat m(2, 3);
  m << 1, 0, 2, 0, 1, 1;
  CHECK(format_matrix(m) == "1 0 2\n0 1 1\n");
}
