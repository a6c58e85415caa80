#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "scope/io.hpp"

using namespace scope;

TEST(Csv, ParsesWithAndWithoutHeader) {
  std::istringstream plain("1,2\n3,4\n\n");
  const io::CsvTable a = io::parse_csv(plain, "plain");
  EXPECT_TRUE(a.header.empty());
  EXPECT_EQ(a.values.rows(), 2);
  EXPECT_EQ(a.values(1, 0), 3.0);
  std::istringstream headed("x, y\n1.5,-2e-3\r\n");
  const io::CsvTable b = io::parse_csv(headed, "headed");
  EXPECT_EQ(b.header, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(b.values(0, 1), -2e-3);
}

TEST(Csv, RejectsMalformed) {
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(io::parse_csv(ragged, "r"), InvalidInput);
  std::istringstream text("1,2\n3,abc\n");
  EXPECT_THROW(io::parse_csv(text, "t"), InvalidInput);
  std::istringstream empty("a,b\n");
  EXPECT_THROW(io::parse_csv(empty, "e"), InvalidInput);
  std::istringstream nan("1,nan\n");
  EXPECT_THROW(io::parse_csv(nan, "n"), InvalidInput);
  EXPECT_THROW(io::read_csv("/nonexistent/file.csv"), InvalidInput);
}

TEST(Json, NumbersAndMatrices) {
  EXPECT_TRUE(io::number(std::numeric_limits<double>::infinity()).is_null());
  EXPECT_TRUE(io::number(std::nan("")).is_null());
  EXPECT_EQ(io::number(0.1).get<double>(), 0.1);
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6.000000000000001;
  const io::json j = io::matrix_json(m);
  EXPECT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0].size(), 3u);
  EXPECT_EQ(io::matrix_from_json(io::json::parse(j.dump())), m);
  EXPECT_THROW(io::matrix_from_json(io::json::parse("[[1,2],[3]]")), InvalidInput);
}

TEST(Json, RoundTripIsBitExact) {
  const double v = 0.1 + 0.2;
  const io::json j = io::json::parse(io::json(v).dump());
  EXPECT_EQ(j.get<double>(), v);
}

TEST(Csv, WriteCsv) {
  std::ostringstream out;
  io::write_csv(out, {"a", "b"}, {{1.0, 0.5}, {2.0, -3.0}});
  EXPECT_EQ(out.str(), "a,b\n1.0,0.5\n2.0,-3.0\n");
}
