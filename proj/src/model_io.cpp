#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "prc/model.hpp"

namespace prc {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "prc-model";
constexpr int kFormatVersion = 1;

// Nested node objects, children inline.
json node_to_json(const Tree& t, std::size_t i) {
  const TreeNode& nd = t.nodes()[i];
  json j;
  j["kind"] = nd.is_leaf() ? "leaf" : "split";
  j["node_score"] = {{"positive", nd.score.positive}, {"negative", nd.score.negative}};
  j["node_label"] = nd.label;
  j["n_samples"] = nd.n_samples;
  if (!nd.is_leaf()) {
    j["feature"] = nd.split->feature;
    j["threshold"] = nd.split->threshold;
    j["criterion"] = criterion_name(nd.split->criterion);
    j["criterion_score"] = nd.split->criterion_score;
    j["left"] = node_to_json(t, nd.left);
    j["right"] = node_to_json(t, nd.right);
  }
  return j;
}

std::size_t node_from_json(const json& j, std::size_t depth, std::vector<TreeNode>& out) {
  const std::size_t index = out.size();
  out.emplace_back();
  TreeNode nd;
  nd.depth = depth;
  nd.score.positive = j.at("node_score").at("positive").get<double>();
  nd.score.negative = j.at("node_score").at("negative").get<double>();
  nd.label = j.at("node_label").get<int>();
  nd.n_samples = j.at("n_samples").get<std::size_t>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "split") {
    SplitSpec s;
    s.feature = j.at("feature").get<std::size_t>();
    s.threshold = j.at("threshold").get<double>();
    s.criterion = parse_criterion(j.at("criterion").get<std::string>());
    s.criterion_score = j.at("criterion_score").get<double>();
    nd.split = s;
    nd.left = node_from_json(j.at("left"), depth + 1, out);
    nd.right = node_from_json(j.at("right"), depth + 1, out);
  } else if (kind != "leaf") {
    throw std::invalid_argument("tree node kind must be 'leaf' or 'split', got '" + kind + "'");
  }
  out[index] = nd;
  return index;
}

json tree_json(const Tree& t) {
  return {{"n_features", t.n_features()}, {"root", node_to_json(t, 0)}};
}

Tree tree_parse(const json& j) {
  std::vector<TreeNode> nodes;
  node_from_json(j.at("root"), 1, nodes);
  return Tree(std::move(nodes), j.at("n_features").get<std::size_t>());
}

json tree_config_json(const TreeConfig& c) {
  return {{"max_depth", c.max_depth},
          {"min_leaf_size", c.min_leaf_size},
          {"n_features_per_split", c.n_features_per_split},
          {"criterion", criterion_name(c.criterion)},
          {"hybrid_weight", c.weight.value()},
          {"seed", c.seed}};
}

TreeConfig tree_config_parse(const json& j) {
  TreeConfig c;
  c.max_depth = j.at("max_depth").get<std::size_t>();
  c.min_leaf_size = j.at("min_leaf_size").get<std::size_t>();
  c.n_features_per_split = j.at("n_features_per_split").get<std::size_t>();
  c.criterion = parse_criterion(j.at("criterion").get<std::string>());
  c.weight = HybridWeight(j.at("hybrid_weight").get<double>());
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

json forest_json(const Forest& f) {
  json trees = json::array();
  for (const auto& t : f.trees()) trees.push_back(tree_json(t));
  return {{"config",
           {{"n_trees", f.config().n_trees},
            {"seed", f.config().seed},
            {"tree", tree_config_json(f.config().tree)}}},
          {"n_training_rows", f.n_training_rows()},
          {"trees", std::move(trees)},
          {"oob_indices", f.oob_sets()}};
}

Forest forest_parse(const json& j) {
  ForestConfig c;
  const json& cj = j.at("config");
  c.n_trees = cj.at("n_trees").get<std::size_t>();
  c.seed = cj.at("seed").get<std::uint64_t>();
  c.tree = tree_config_parse(cj.at("tree"));
  std::vector<Tree> trees;
  for (const auto& t : j.at("trees")) trees.push_back(tree_parse(t));
  auto oob = j.at("oob_indices").get<std::vector<std::vector<std::size_t>>>();
  if (trees.size() != c.n_trees) throw std::invalid_argument("forest: tree count mismatch");
  return Forest(std::move(trees), std::move(oob), c, j.at("n_training_rows").get<std::size_t>());
}

template <typename Fn>
auto parse_or_throw(std::string_view text, const char* what, Fn&& fn) {
  try {
    return fn(json::parse(text));
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::string tree_to_json(const Tree& t) { return tree_json(t).dump(); }

Tree tree_from_json(std::string_view text) {
  return parse_or_throw(text, "tree", [](const json& j) { return tree_parse(j); });
}

std::string forest_to_json(const Forest& f) { return forest_json(f).dump(); }

Forest forest_from_json(std::string_view text) {
  return parse_or_throw(text, "forest", [](const json& j) { return forest_parse(j); });
}

std::string model_to_json(const Model& m) {
  json j;
  j["format"] = kFormat;
  j["version"] = kFormatVersion;
  j["kind"] = model_kind_name(m.kind);
  j["feature_names"] = m.feature_names;
  j["provenance"] = {{"source", m.provenance.source},
                     {"data_seed", m.provenance.data_seed},
                     {"split_fraction", m.provenance.split_fraction},
                     {"stratified", m.provenance.stratified},
                     {"label_column", m.provenance.label_column},
                     {"positive_value", m.provenance.positive_value}};
  if (m.calibration) {
    j["calibration"] = {{"hybrid_weight", m.calibration->weight.value()},
                        {"oob_error_prc_rf", m.calibration->oob_error_prc},
                        {"oob_error_roc_rf", m.calibration->oob_error_roc}};
  }
  if (m.oob) {
    j["oob"] = {{"error", m.oob->error}, {"n_scored", m.oob->n_scored},
                {"n_excluded", m.oob->n_excluded}};
  }
  if (m.tree) j["tree"] = tree_json(*m.tree);
  if (m.forest) j["forest"] = forest_json(*m.forest);
  return j.dump(1) + "\n";
}

Model model_from_json(std::string_view text) {
  return parse_or_throw(text, "model", [](const json& j) {
    if (j.at("format").get<std::string>() != kFormat) {
      throw std::invalid_argument("model: not a prc-model file");
    }
    if (j.at("version").get<int>() != kFormatVersion) {
      throw std::invalid_argument("model: unsupported format version");
    }
    Model m;
    m.kind = parse_model_kind(j.at("kind").get<std::string>());
    m.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    const json& pj = j.at("provenance");
    m.provenance.source = pj.at("source").get<std::string>();
    m.provenance.data_seed = pj.at("data_seed").get<std::uint64_t>();
    m.provenance.split_fraction = pj.at("split_fraction").get<double>();
    m.provenance.stratified = pj.at("stratified").get<bool>();
    m.provenance.label_column = pj.at("label_column").get<std::string>();
    m.provenance.positive_value = pj.at("positive_value").get<std::string>();
    if (j.contains("calibration")) {
      const json& cj = j["calibration"];
      m.calibration = Calibration{HybridWeight(cj.at("hybrid_weight").get<double>()),
                                  cj.at("oob_error_prc_rf").get<double>(),
                                  cj.at("oob_error_roc_rf").get<double>()};
    }
    if (j.contains("oob")) {
      const json& oj = j["oob"];
      m.oob = OobSummary{oj.at("error").get<double>(), oj.at("n_scored").get<std::size_t>(),
                         oj.at("n_excluded").get<std::size_t>()};
    }
    if (is_forest(m.kind)) {
      m.forest = forest_parse(j.at("forest"));
      if (m.forest->n_features() != m.feature_names.size()) {
        throw std::invalid_argument("model: forest feature count disagrees with feature_names");
      }
    } else {
      m.tree = tree_parse(j.at("tree"));
      if (m.tree->n_features() != m.feature_names.size()) {
        throw std::invalid_argument("model: tree feature count disagrees with feature_names");
      }
    }
    return m;
  });
}

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << model_to_json(m);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace prc
