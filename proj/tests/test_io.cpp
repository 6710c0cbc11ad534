#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "divgrad/io.hpp"
#include "support/oracles.hpp"

using namespace divgrad;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("vector round-trip is bit-identical text") {
  const std::string path = "io_test_vector.txt";
  const auto f = oracle::random_field(16, 555);
  write_vector(path, f.values());
  const std::string first = slurp(path);

  const std::vector<double> back = read_vector(path);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i] == f[i]);  // exact: 17 significant digits round-trip
  }

  write_vector(path, back);
  CHECK(slurp(path) == first);
  std::remove(path.c_str());
}

TEST_CASE("matrix round-trip") {
  const std::string path = "io_test_matrix.csv";
  const std::vector<double> values = {1.0, 0.25, 1e-17, 3.5,
                                      2.0 / 3.0, 1234.5678901234567};
  write_matrix_csv(path, 2, 3, values);
  const MatrixData m = read_matrix_csv(path);
  CHECK(m.rows == 2);
  CHECK(m.cols == 3);
  for (std::size_t i = 0; i < values.size(); ++i) {
    CHECK(m.values[i] == values[i]);
  }
  std::remove(path.c_str());
}

TEST_CASE("io errors") {
  CHECK_THROWS_AS(read_vector("does_not_exist.txt"), Error);
  CHECK_THROWS_AS(read_matrix_csv("does_not_exist.csv"), Error);
}
