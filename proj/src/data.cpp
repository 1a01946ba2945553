#include "prc/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "prc/metrics.hpp"

namespace prc {

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<int> labels,
                 std::vector<std::string> feature_names)
    : columns_(std::move(columns)), labels_(std::move(labels)), names_(std::move(feature_names)) {
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != labels_.size()) {
      throw std::invalid_argument("Dataset: column " + std::to_string(j) + " has " +
                                  std::to_string(columns_[j].size()) + " values, expected " +
                                  std::to_string(labels_.size()));
    }
    for (std::size_t i = 0; i < columns_[j].size(); ++i) {
      if (!std::isfinite(columns_[j][i])) {
        throw std::invalid_argument("Dataset: non-finite value at row " + std::to_string(i) +
                                    ", feature " + std::to_string(j));
      }
    }
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != kPositive && labels_[i] != kNegative) {
      throw std::invalid_argument("Dataset: label at row " + std::to_string(i) +
                                  " is not -1 or +1");
    }
  }
  if (names_.empty()) {
    for (std::size_t j = 0; j < columns_.size(); ++j) names_.push_back("x" + std::to_string(j));
  } else if (names_.size() != columns_.size()) {
    throw std::invalid_argument("Dataset: feature name count does not match column count");
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels,
                           std::vector<std::string> feature_names) {
  if (rows.size() != labels.size()) {
    throw std::invalid_argument("Dataset: row count does not match label count");
  }
  const std::size_t p = rows.empty() ? feature_names.size() : rows.front().size();
  std::vector<std::vector<double>> columns(p, std::vector<double>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != p) throw std::invalid_argument("Dataset: ragged rows");
    for (std::size_t j = 0; j < p; ++j) columns[j][i] = rows[i][j];
  }
  return Dataset(std::move(columns), std::move(labels), std::move(feature_names));
}

std::vector<double> Dataset::row(std::size_t i) const {
  std::vector<double> r(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) r[j] = columns_[j][i];
  return r;
}

std::size_t Dataset::count_positive() const noexcept {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), kPositive));
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols(columns_.size(), std::vector<double>(rows.size()));
  std::vector<int> labs(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const std::size_t i = rows[k];
    if (i >= labels_.size()) throw std::out_of_range("Dataset::subset: row index out of range");
    labs[k] = labels_[i];
    for (std::size_t j = 0; j < columns_.size(); ++j) cols[j][k] = columns_[j][i];
  }
  Dataset out;
  out.columns_ = std::move(cols);
  out.labels_ = std::move(labs);
  out.names_ = names_;
  return out;
}

// ---------------------------------------------------------------------------
// Scenarios

std::size_t ScenarioSpec::n_minority() const {
  return static_cast<std::size_t>(std::floor(minority_fraction * static_cast<double>(n_samples)));
}

void ScenarioSpec::validate() const {
  if (n_samples == 0) throw std::invalid_argument("scenario: n_samples must be positive");
  if (!(minority_fraction > 0.0 && minority_fraction < 1.0)) {
    throw std::invalid_argument("scenario: minority_fraction must lie in (0, 1)");
  }
  if (n_minority() < 1) {
    throw std::invalid_argument("scenario: minority_fraction * n_samples must be at least 1");
  }
  if (n_informative == 0) throw std::invalid_argument("scenario: n_informative must be positive");
  if (!(sd > 0.0) || !std::isfinite(sd)) throw std::invalid_argument("scenario: sd must be positive");
  if (!std::isfinite(mean_minority) || !std::isfinite(mean_majority) || !std::isfinite(mean_noise)) {
    throw std::invalid_argument("scenario: means must be finite");
  }
}

std::string ScenarioSpec::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "name = " << name << '\n'
     << "n_samples = " << n_samples << '\n'
     << "minority_fraction = " << minority_fraction << '\n'
     << "n_informative = " << n_informative << '\n'
     << "n_noise = " << n_noise << '\n'
     << "mean_minority = " << mean_minority << '\n'
     << "mean_majority = " << mean_majority << '\n'
     << "mean_noise = " << mean_noise << '\n'
     << "sd = " << sd << '\n'
     << "rng_seed = " << rng_seed << '\n';
  return os.str();
}

ScenarioSpec scenario_preset(int id, std::uint64_t seed) {
  ScenarioSpec s;
  s.rng_seed = seed;
  switch (id) {
    case 1:  // easy, mild imbalance, low dimension
      s.name = "scenario-1";
      break;
    case 2:  // easy, moderate imbalance, higher dimension
      s.name = "scenario-2";
      s.minority_fraction = 0.10;
      s.n_informative = 15;
      break;
    case 3:  // easy, extreme imbalance, low dimension
      s.name = "scenario-3";
      s.minority_fraction = 0.01;
      break;
    case 4:  // hard, mild imbalance, noise features
      s.name = "scenario-4";
      s.n_informative = 10;
      s.n_noise = 5;
      s.mean_minority = -1.0;
      break;
    case 5:  // hard, extreme imbalance, noise features
      s.name = "scenario-5";
      s.minority_fraction = 0.01;
      s.n_informative = 10;
      s.n_noise = 5;
      s.mean_minority = -1.0;
      break;
    default:
      throw std::out_of_range("unknown scenario preset " + std::to_string(id) +
                              " (expected 1-5)");
  }
  return s;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return std::string(s.substr(b, e - b));
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("scenario config: invalid value '" + text + "' for " + key);
  }
  return value;
}

}  // namespace

ScenarioSpec parse_scenario_config(const std::string& text) {
  ScenarioSpec s;
  s.name = "custom";
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find_first_of("=:");
    if (sep == std::string::npos) {
      throw std::invalid_argument("scenario config: line " + std::to_string(line_no) +
                                  " is not 'key = value'");
    }
    const std::string key = trim(std::string_view(line).substr(0, sep));
    const std::string value = trim(std::string_view(line).substr(sep + 1));
    if (key == "name") s.name = value;
    else if (key == "n_samples") s.n_samples = parse_number<std::size_t>(value, key);
    else if (key == "minority_fraction") s.minority_fraction = parse_number<double>(value, key);
    else if (key == "n_informative") s.n_informative = parse_number<std::size_t>(value, key);
    else if (key == "n_noise") s.n_noise = parse_number<std::size_t>(value, key);
    else if (key == "mean_minority") s.mean_minority = parse_number<double>(value, key);
    else if (key == "mean_majority") s.mean_majority = parse_number<double>(value, key);
    else if (key == "mean_noise") s.mean_noise = parse_number<double>(value, key);
    else if (key == "sd") s.sd = parse_number<double>(value, key);
    else if (key == "rng_seed") s.rng_seed = parse_number<std::uint64_t>(value, key);
    else {
      throw std::invalid_argument("scenario config: unknown key '" + key + "' on line " +
                                  std::to_string(line_no));
    }
  }
  s.validate();
  return s;
}

ScenarioSpec load_scenario_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_config(buf.str());
}

Dataset generate_scenario(const ScenarioSpec& spec) {
  spec.validate();
  const std::size_t n = spec.n_samples;
  const std::size_t n_pos = spec.n_minority();
  const std::size_t p = spec.n_informative + spec.n_noise;

  Rng rng(spec.rng_seed);
  std::vector<std::vector<double>> rows(n, std::vector<double>(p));
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool minority = i < n_pos;
    labels[i] = minority ? kPositive : kNegative;
    const double mean = minority ? spec.mean_minority : spec.mean_majority;
    for (std::size_t j = 0; j < spec.n_informative; ++j) rows[i][j] = rng.normal(mean, spec.sd);
    for (std::size_t j = spec.n_informative; j < p; ++j) {
      rows[i][j] = rng.normal(spec.mean_noise, spec.sd);
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  rng.shuffle(std::span<std::size_t>(order));

  std::vector<std::vector<double>> columns(p, std::vector<double>(n));
  std::vector<int> shuffled(n);
  for (std::size_t k = 0; k < n; ++k) {
    shuffled[k] = labels[order[k]];
    for (std::size_t j = 0; j < p; ++j) columns[j][k] = rows[order[k]][j];
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < spec.n_informative; ++j) names.push_back("x" + std::to_string(j + 1));
  for (std::size_t j = 0; j < spec.n_noise; ++j) names.push_back("noise" + std::to_string(j + 1));
  return Dataset(std::move(columns), std::move(shuffled), std::move(names));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_csv_line(const std::string& line, const std::string& source,
                                        std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      cells.push_back(was_quoted ? cell : trim(cell));
      cell.clear();
      was_quoted = false;
    } else {
      cell.push_back(c);
    }
  }
  if (quoted) {
    throw std::invalid_argument(source + ": line " + std::to_string(line_no) +
                                ": unterminated quoted field");
  }
  cells.push_back(was_quoted ? cell : trim(cell));
  return cells;
}

bool blank(const std::string& line) { return trim(line).empty(); }

}  // namespace

Dataset parse_csv(const std::string& text, const std::string& label_column,
                  const std::string& positive_value, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
      line.erase(0, 3);
    }
    if (blank(line)) continue;
    header = split_csv_line(line, source, line_no);
    break;
  }
  if (header.empty()) throw std::invalid_argument(source + ": empty file (no header row)");

  auto label_it = std::find(header.begin(), header.end(), label_column);
  if (label_it == header.end()) {
    throw std::invalid_argument(source + ": label column '" + label_column +
                                "' not found in header");
  }
  const std::size_t label_idx = static_cast<std::size_t>(label_it - header.begin());

  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_idx) names.push_back(header[c]);
  }
  std::vector<std::vector<double>> columns(names.size());
  std::vector<int> labels;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line, source, line_no);
    if (cells.size() != header.size()) {
      throw std::invalid_argument(source + ": line " + std::to_string(line_no) + " has " +
                                  std::to_string(cells.size()) + " fields, header has " +
                                  std::to_string(header.size()));
    }
    std::size_t f = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_idx) continue;
      const std::string& cell = cells[c];
      double value = 0.0;
      const char* begin = cell.data();
      const char* end = cell.data() + cell.size();
      if (begin != end && *begin == '+') ++begin;
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (cell.empty() || ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw std::invalid_argument(source + ": line " + std::to_string(line_no) + ", column '" +
                                    header[c] + "' (" + std::to_string(c + 1) +
                                    "): non-numeric value '" + cell + "'");
      }
      columns[f++].push_back(value);
    }
    labels.push_back(cells[label_idx] == positive_value ? kPositive : kNegative);
  }
  if (labels.empty()) throw std::invalid_argument(source + ": no data rows");
  return Dataset(std::move(columns), std::move(labels), std::move(names));
}

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_value) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), label_column, positive_value, path.string());
}

namespace {

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos && trim(s) == s) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

std::string to_csv(const Dataset& data, const std::string& label_column) {
  std::string out;
  for (const auto& name : data.feature_names()) {
    out += quote_if_needed(name);
    out.push_back(',');
  }
  out += quote_if_needed(label_column);
  out.push_back('\n');
  char buf[64];
  for (std::size_t i = 0; i < data.n_rows(); ++i) {
    for (std::size_t j = 0; j < data.n_features(); ++j) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, data.at(i, j));
      out.append(buf, ptr);
      out.push_back(',');
    }
    out += data.label(i) == kPositive ? "1" : "0";
    out.push_back('\n');
  }
  return out;
}

void write_csv(const Dataset& data, const std::filesystem::path& path,
               const std::string& label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_csv(data, label_column);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

// ---------------------------------------------------------------------------
// Splitting

SplitIndices train_test_indices(std::span<const int> labels, double train_fraction,
                                bool stratified, Rng& rng) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw std::invalid_argument("train_fraction must lie in (0, 1)");
  }
  SplitIndices out;
  auto take = [&](std::vector<std::size_t> pool) {
    rng.shuffle(std::span<std::size_t>(pool));
    const auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(pool.size())));
    out.train.insert(out.train.end(), pool.begin(), pool.begin() + n_train);
    out.test.insert(out.test.end(), pool.begin() + n_train, pool.end());
  };
  if (stratified) {
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      (labels[i] == kPositive ? pos : neg).push_back(i);
    }
    take(std::move(pos));
    take(std::move(neg));
  } else {
    std::vector<std::size_t> all(labels.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    take(std::move(all));
  }
  if (out.train.empty() || out.test.empty()) {
    throw std::invalid_argument("train_test_split: fraction " + std::to_string(train_fraction) +
                                " leaves an empty part for " + std::to_string(labels.size()) +
                                " rows");
  }
  std::sort(out.train.begin(), out.train.end());
  std::sort(out.test.begin(), out.test.end());
  return out;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& data, double train_fraction,
                                             bool stratified, Rng& rng) {
  const auto idx = train_test_indices(data.labels(), train_fraction, stratified, rng);
  return {data.subset(idx.train), data.subset(idx.test)};
}

}  // namespace prc
