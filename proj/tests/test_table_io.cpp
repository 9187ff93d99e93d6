#include "condshrink/table_io.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

using namespace condshrink;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  explicit TempFile(const std::string& name)
      : path((fs::temp_directory_path() / name).string()) {}
  ~TempFile() { std::remove(path.c_str()); }
  void fill(const std::string& content) {
    std::ofstream out(path);
    out << content;
  }
  std::string path;
};

}  // namespace

TEST_CASE("matrix csv roundtrip") {
  TempFile f("condshrink_test_matrix.csv");
  Eigen::MatrixXd m(2, 3);
  m << 1.5, -2.0, 3.25, 0.0, 1e-9, 123456.789012;
  atomic_write(f.path, matrix_to_csv(m));
  const Eigen::MatrixXd back = read_matrix_csv(f.path);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(!fs::exists(f.path + ".tmp"));
}

TEST_CASE("matrix csv rejects ragged and non-numeric input") {
  TempFile f("condshrink_test_bad.csv");
  f.fill("1,2,3\n4,5\n");
  CHECK_THROWS_AS(read_matrix_csv(f.path), std::domain_error);
  f.fill("1,2\n3,x\n");
  CHECK_THROWS_AS(read_matrix_csv(f.path), std::domain_error);
  f.fill("");
  CHECK_THROWS_AS(read_matrix_csv(f.path), std::domain_error);
  CHECK_THROWS_AS(read_matrix_csv("/nonexistent/file.csv"), std::domain_error);
}

TEST_CASE("eigenvalue list parsing") {
  TempFile f("condshrink_test_vals.txt");
  f.fill("6.25\n3.0\n3.0\n0.5\n");
  const auto vals = read_eigenvalue_list(f.path);
  REQUIRE(vals.size() == 4);
  CHECK(vals[0] == doctest::Approx(6.25));
  f.fill("1.0\n2.0\n");  // ascending: caller bug, not silently sorted
  CHECK_THROWS_AS(read_eigenvalue_list(f.path), std::domain_error);
}

TEST_CASE("number formatting carries 12 significant digits") {
  CHECK(format_number(4.159591794226542) == "4.15959179423");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.5) == "-0.5");
}
