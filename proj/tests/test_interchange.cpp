#include <catch2/catch_amalgamated.hpp>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "pointlab/interchange.hpp"
#include "pointlab/sampling.hpp"

using namespace pointlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("pointlab-test-" + std::to_string(std::rand()) +
            std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

}  // namespace

TEST_CASE("configuration json round trip is exact", "[interchange]") {
  const auto c = sample_poisson(1.0, {-5.0, 5.0}, 2, 77);
  CouplingSequence alphas(c.size(), -0.75);
  const json doc = config_to_json(c, &alphas);

  CouplingSequence back_alphas;
  const auto back = config_from_json(doc, &back_alphas);
  CHECK(back.dim == c.dim);
  CHECK(back.window.lo == c.window.lo);
  CHECK(back.window.hi == c.window.hi);
  CHECK(back.points == c.points);  // bitwise: json stores doubles losslessly
  CHECK(back_alphas == alphas);

  // a second serialization is byte-identical
  CHECK(config_to_json(back, &back_alphas).dump(2) == doc.dump(2));
}

TEST_CASE("configuration json rejects malformed documents", "[interchange]") {
  const auto c = sample_poisson(1.0, {0.0, 4.0}, 2, 5);
  json doc = config_to_json(c);

  json bad = doc;
  bad.erase("window");
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);

  bad = doc;
  bad["dimension"] = 2.5;
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);

  bad = doc;
  bad["points"][0] = json::array({1.0});  // wrong arity
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);

  bad = doc;
  bad["points"][0][0] = "x";
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);

  bad = doc;
  bad["couplings"] = json::array({1.0});  // one per point required
  CouplingSequence sink;
  CHECK_THROWS_AS(config_from_json(bad, &sink), std::invalid_argument);

  bad = doc;
  bad["window"]["hi"] = -100.0;  // fails validate(): points outside window
  CHECK_THROWS_AS(config_from_json(bad), std::invalid_argument);
}

TEST_CASE("manifest round trip", "[interchange]") {
  RunManifest m;
  m.subcommand = "sample";
  m.argv = {"sample", "--model", "poisson", "--dim", "2"};
  m.parameters = {{"intensity", 1.0}, {"seed", 7}};
  m.outputs = {"run.config.json"};
  m.created = "2026-01-01T00:00:00Z";

  const json doc = manifest_to_json(m);
  CHECK(doc["tool"] == "pointlab");
  CHECK(doc["version"] == version_string);

  const auto back = manifest_from_json(doc);
  CHECK(back.subcommand == m.subcommand);
  CHECK(back.argv == m.argv);
  CHECK(back.parameters == m.parameters);
  CHECK(back.outputs == m.outputs);
  CHECK(back.created == m.created);

  CHECK_THROWS_AS(manifest_from_json(json{{"tool", "pointlab"}}),
                  std::invalid_argument);
}

TEST_CASE("csv layout", "[interchange]") {
  const std::string text =
      csv_table({"a", "b", "c"}, {{"1", "2", "3"}, {"4.5", "-1", "0"}});
  CHECK(text == "a,b,c\n1,2,3\n4.5,-1,0\n");
}

TEST_CASE("atomic writes create parent directories", "[interchange]") {
  TempDir tmp;
  const fs::path target = tmp.path / "deep" / "nested" / "out.txt";
  write_text_atomic(target, "payload\n");
  CHECK(read_text(target) == "payload\n");
  write_text_atomic(target, "replaced\n");  // overwrite through the same path
  CHECK(read_text(target) == "replaced\n");
  CHECK_THROWS_AS(read_text(tmp.path / "absent.txt"), std::invalid_argument);
}

TEST_CASE("seventeen digits round trip any double", "[interchange]") {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, -0.0,
                   3.7200759760208361e-44}) {
    const std::string s = fmt17(x);
    CHECK(std::stod(s) == x);
  }
}
