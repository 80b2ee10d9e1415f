#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "isometrica/error.hpp"
#include "isometrica/homotopy.hpp"
#include "isometrica/json_io.hpp"
#include "isometrica/rng.hpp"

using namespace isometrica;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::kInvalidArgument;
}

}  // namespace

TEST(JsonIo, MatrixRoundTripIsExact) {
  RandomStream rng(80, 0);
  const ComplexMatrix m = rng.gaussian_matrix(3, 4);
  const Json j = to_json(m);
  EXPECT_EQ(j["rows"], 3);
  EXPECT_EQ(j["cols"], 4);
  EXPECT_EQ(matrix_from_json(j), m);
  EXPECT_EQ(matrix_from_json(Json::parse(j.dump())), m);
}

TEST(JsonIo, RealEntriesAreAccepted) {
  const Json j = Json::parse(R"({"rows":1,"cols":2,"data":[1.5,[0,-2]]})");
  EXPECT_EQ(matrix_from_json(j), (ComplexMatrix{{1.5, Complex(0.0, -2.0)}}));
}

TEST(JsonIo, BlockOperatorRoundTrip) {
  RandomStream rng(81, 0);
  const BlockOperator a(std::vector<ComplexMatrix>{rng.gaussian_matrix(2, 3), rng.gaussian_matrix(1, 1)});
  EXPECT_EQ(block_operator_from_json(Json::parse(to_json(a).dump())), a);
  // A bare matrix reads as a single block.
  const ComplexMatrix m = rng.gaussian_matrix(2, 2);
  EXPECT_EQ(block_operator_from_json(to_json(m)), BlockOperator(m));
}

TEST(JsonIo, MalformedInputRaisesParseError) {
  for (const char* text : {R"({"rows":2,"cols":2})", R"({"rows":2,"cols":2,"data":[1,2,3]})",
                           R"({"rows":-1,"cols":2,"data":[]})", R"({"rows":1,"cols":1,"data":["x"]})",
                           R"({"rows":1,"cols":1,"data":[[1,2,3]]})", R"([1,2])"}) {
    EXPECT_EQ(kind_of([&] { matrix_from_json(Json::parse(text)); }), ErrorKind::kParseError) << text;
  }
  EXPECT_EQ(kind_of([] { block_operator_from_json(Json::parse(R"({"blocks":[]})")); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { family_from_json(Json::parse("[]")); }), ErrorKind::kParseError);
  EXPECT_EQ(kind_of([] { family_from_json(Json::parse(R"([{"operator":{"rows":1,"cols":1,"data":[1]}}])")); }),
            ErrorKind::kParseError);
}

TEST(JsonIo, FamilyForms) {
  const auto with_x = family_from_json(Json::parse(
      R"([{"x":-0.5,"operator":{"rows":1,"cols":1,"data":[1]}},{"x":0.5,"operator":{"rows":1,"cols":1,"data":[2]}}])"));
  ASSERT_EQ(with_x.size(), 2u);
  EXPECT_EQ(with_x[0].x, -0.5);
  EXPECT_EQ(with_x[1].f, BlockOperator(ComplexMatrix{{2.0}}));
  const auto bare = family_from_json(Json::parse(R"([{"rows":1,"cols":1,"data":[1]},{"rows":1,"cols":1,"data":[3]}])"));
  EXPECT_EQ(bare[1].x, 1.0);
}

TEST(JsonIo, FileReadErrors) {
  const auto dir = std::filesystem::temp_directory_path() / "isometrica_json_io_test";
  std::filesystem::create_directories(dir);
  EXPECT_EQ(kind_of([&] { read_json_file(dir / "missing.json"); }), ErrorKind::kParseError);
  {
    std::ofstream(dir / "broken.json") << "{ not json";
  }
  EXPECT_EQ(kind_of([&] { read_json_file(dir / "broken.json"); }), ErrorKind::kParseError);
  write_text(dir / "ok.json", to_json(ComplexMatrix{{1.0}}).dump());
  EXPECT_EQ(matrix_from_json(read_json_file(dir / "ok.json")), (ComplexMatrix{{1.0}}));
  std::filesystem::remove_all(dir);
}

TEST(JsonIo, PathDocument) {
  const BlockOperator u(ComplexMatrix{{1.0, 0.0}});
  const BlockOperator v(ComplexMatrix{{0.0, 1.0}});
  const IsometryPath path = extremal_path(u, v, 4);
  const Json j = to_json(path, verify_path(path, true));
  EXPECT_EQ(j["recipe"], std::string(to_string(path.recipe)));
  EXPECT_EQ(j["sample_count"], path.samples.size());
  EXPECT_TRUE(j["certificate"]["passed"].get<bool>());
  EXPECT_EQ(j["samples"].size(), path.samples.size());
  EXPECT_EQ(block_operator_from_json(j["samples"].back()["operator"]), path.samples.back().w);
}

TEST(JsonIo, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_double(x)), x);
}
