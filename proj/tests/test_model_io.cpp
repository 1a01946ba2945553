#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "prc/benchmark.hpp"
#include "prc/data.hpp"
#include "prc/model.hpp"

#include "json.hpp"

using namespace prc;

namespace {

Dataset scenario(std::uint64_t seed, std::size_t n = 400) {
  auto s = scenario_preset(1, seed);
  s.n_samples = n;
  return generate_scenario(s);
}

}  // namespace

TEST_CASE("model kinds") {
  for (auto k : all_model_kinds()) CHECK(parse_model_kind(model_kind_name(k)) == k);
  CHECK(is_forest(ModelKind::PrcRocRf));
  CHECK_FALSE(is_forest(ModelKind::GiniTree));
  CHECK(model_criterion(ModelKind::RocRf) == Criterion::ROC);
  CHECK_THROWS(parse_model_kind("svm"));
}

TEST_CASE("every model kind survives a save/load round trip") {
  Dataset d = scenario(2);
  ModelConfig cfg;
  cfg.n_trees = 5;
  cfg.seed = 3;
  for (auto k : all_model_kinds()) {
    CAPTURE(model_kind_name(k));
    Model m = train_model(k, d, cfg);
    std::string text = model_to_json(m);
    Model back = model_from_json(text);
    CHECK(model_to_json(back) == text);
    CHECK(back.predict_labels(d) == m.predict_labels(d));
    CHECK(back.calibration.has_value() == (k == ModelKind::PrcRocTree || k == ModelKind::PrcRocRf));
    CHECK(back.oob.has_value() == is_forest(k));
  }
}

TEST_CASE("file round trip and bad input") {
  Dataset d = scenario(4);
  Model m = train_model(ModelKind::PrcTree, d, ModelConfig{});
  auto path = std::filesystem::temp_directory_path() / "prc_test_model.json";
  save_model(m, path);
  Model back = load_model(path);
  std::filesystem::remove(path);
  CHECK(back.tree == m.tree);
  CHECK_THROWS(model_from_json("{}"));
  CHECK_THROWS(model_from_json("not json"));
  CHECK_THROWS(load_model("/nonexistent/prc.model"));
  Dataset wide({{1}, {2}, {3}}, {1});
  CHECK_THROWS(m.predict_labels(wide));
}

TEST_CASE("tree json is nested nodes") {
  Dataset d(std::vector<std::vector<double>>{{1, 2, 3, 4}}, {1, 1, -1, -1});
  TreeConfig cfg;
  cfg.min_leaf_size = 1;
  Tree t = build_tree(d, cfg);
  auto doc = nlohmann::json::parse(tree_to_json(t));
  CHECK(doc["n_features"] == 1);
  auto& j = doc["root"];
  CHECK(j["kind"] == "split");
  CHECK(j["threshold"] == 2.0);
  CHECK(j["left"]["kind"] == "leaf");
  CHECK(j["left"]["node_label"] == 1);
  CHECK(tree_from_json(tree_to_json(t)) == t);
}

TEST_CASE("benchmark records are well-formed json lines") {
  BenchmarkOptions o;
  o.scenarios = {1};
  o.algorithms = {ModelKind::PrcTree, ModelKind::GiniRf};
  o.seeds = {1, 2};
  o.model.n_trees = 5;
  o.n_samples = 300;
  auto r = run_benchmark(o);
  CHECK(r.all_ok());
  CHECK(r.cells.size() == 4);
  CHECK(r.rows.size() == 2);
  std::istringstream in(benchmark_jsonl(r));
  std::string line;
  int cells = 0, summaries = 0;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line);
    if (j["record"] == "cell") {
      ++cells;
      CHECK(j.contains("f1"));
      CHECK(j.contains("seed"));
    } else if (j["record"] == "summary") {
      ++summaries;
    }
  }
  CHECK(cells == 4);
  CHECK(summaries == 2);
  CHECK(render_benchmark(r, o).find("gini-rf") != std::string::npos);
  o.seeds.clear();
  CHECK_THROWS(run_benchmark(o));
}

TEST_CASE("median of rates") {
  CHECK(*median({0.1, 0.5, std::nullopt, 0.3}) == 0.3);
  CHECK(*median({0.2, 0.4}) == doctest::Approx(0.3));
  CHECK_FALSE(median({std::nullopt}).has_value());
}
