#include "rqn/harness/io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace rqn::harness {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path, const std::string& header) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::string line;
  if (!std::getline(f, line) || line != header) {
    throw std::runtime_error(path.string() + ": expected header '" + header + "'");
  }
  std::vector<std::vector<std::string>> rows;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_double(const std::string& s) {
  size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::runtime_error("bad number '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, end);
}

void write_metrics_csv(const fs::path& path, const std::vector<EvalRecord>& evals) {
  auto f = open_out(path);
  f << "episode,eval_reward\n";
  for (const auto& e : evals) f << e.episode << ',' << format_double(e.eval_reward) << '\n';
}

std::vector<EvalRecord> read_metrics_csv(const fs::path& path) {
  std::vector<EvalRecord> out;
  for (const auto& row : read_csv(path, "episode,eval_reward")) {
    if (row.size() != 2) throw std::runtime_error(path.string() + ": malformed row");
    out.push_back({std::stoi(row[0]), parse_double(row[1])});
  }
  return out;
}

void write_phi_csv(const fs::path& path, const std::vector<PhiSnapshot>& trace) {
  auto f = open_out(path);
  f << "episode,agent,phi\n";
  for (const auto& s : trace) {
    for (size_t i = 0; i < s.phi.size(); ++i) f << s.episode << ',' << i << ',' << format_double(s.phi[i]) << '\n';
  }
}

std::vector<PhiSnapshot> read_phi_csv(const fs::path& path) {
  std::vector<PhiSnapshot> out;
  for (const auto& row : read_csv(path, "episode,agent,phi")) {
    if (row.size() != 3) throw std::runtime_error(path.string() + ": malformed row");
    const int episode = std::stoi(row[0]);
    const size_t agent = static_cast<size_t>(std::stoul(row[1]));
    if (out.empty() || out.back().episode != episode) out.push_back({episode, {}});
    if (agent != out.back().phi.size()) throw std::runtime_error(path.string() + ": agents out of order");
    out.back().phi.push_back(parse_double(row[2]));
  }
  return out;
}

void write_reconstruction_csv(const fs::path& path, const ReconstructionTable& table) {
  auto f = open_out(path);
  f << "a0,a1,qtot\n";
  for (int a0 = 0; a0 < table.size(); ++a0) {
    for (int a1 = 0; a1 < table.size(); ++a1) f << a0 << ',' << a1 << ',' << format_double(table.at(a0, a1)) << '\n';
  }
}

void write_aggregate_csv(const fs::path& path, const std::vector<int>& episodes, const SeedAggregate& agg) {
  if (episodes.size() != agg.mean.size()) throw std::invalid_argument("aggregate: episode grid size differs");
  auto f = open_out(path);
  f << "episode,mean,ci95\n";
  for (size_t k = 0; k < episodes.size(); ++k) {
    f << episodes[k] << ',' << format_double(agg.mean[k]) << ',' << format_double(agg.half_width[k]) << '\n';
  }
}

void save_parameters(const fs::path& path, const std::vector<nn::Parameter*>& params) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const nn::Parameter* p : params) {
    if (j.contains(p->name())) throw std::logic_error("duplicate parameter name " + p->name());
    const nn::Matrix& v = p->value();
    j[p->name()] = {{"rows", v.rows()}, {"cols", v.cols()}, {"data", std::vector<double>(v.data(), v.data() + v.size())}};
  }
  auto f = open_out(path);
  f << j.dump(1) << '\n';
}

void load_parameters(const fs::path& path, const std::vector<nn::Parameter*>& params) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  const nlohmann::json j = nlohmann::json::parse(f);
  for (nn::Parameter* p : params) {
    if (!j.contains(p->name())) throw std::runtime_error(path.string() + ": missing parameter " + p->name());
    const auto& e = j.at(p->name());
    const auto rows = e.at("rows").get<Eigen::Index>();
    const auto cols = e.at("cols").get<Eigen::Index>();
    const auto data = e.at("data").get<std::vector<double>>();
    if (rows != p->value().rows() || cols != p->value().cols() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
      throw std::runtime_error(path.string() + ": shape mismatch for " + p->name());
    }
    p->assign(Eigen::Map<const nn::Matrix>(data.data(), rows, cols));
  }
}

}  // namespace rqn::harness
