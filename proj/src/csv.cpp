#include "replaylab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

namespace replaylab {

namespace {

std::string format_real(double v) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(begin));
      return out;
    }
    out.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

template <class T>
T field(std::string_view text, std::size_t line_no, const char* name) {
  T out{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw IoError("line " + std::to_string(line_no) + ": bad " + name + " '" + std::string(text) + "'");
  return out;
}

}  // namespace

std::vector<RunRow> to_rows(const ExperimentConfig& cfg, const std::vector<RunRecord>& records) {
  std::vector<RunRow> rows;
  for (const auto& r : records)
    for (const auto& e : r.per_episode)
      rows.push_back({cfg.id, std::string(to_string(cfg.algorithm)),
                      std::string(to_string(cfg.representation)), cfg.buffer_capacity, r.seed,
                      e.episode, e.episode_return, e.steps});
  return rows;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows, bool header) {
  if (header) out << kRunCsvHeader << '\n';
  for (const auto& r : rows)
    out << r.experiment_id << ',' << r.algorithm << ',' << r.representation << ',' << r.buffer_size
        << ',' << r.seed << ',' << r.episode << ',' << format_real(r.episode_return) << ','
        << r.steps << '\n';
}

void write_aggregate_csv(std::ostream& out, const ExperimentConfig& cfg, const AggregateCurve& curve,
                         bool header) {
  if (header) out << kAggregateCsvHeader << '\n';
  for (const auto& p : curve)
    out << cfg.id << ',' << to_string(cfg.algorithm) << ',' << to_string(cfg.representation) << ','
        << cfg.buffer_capacity << ',' << p.episode << ',' << format_real(p.mean) << ','
        << format_real(p.stderr_) << ',' << p.runs << '\n';
}

std::vector<RunRow> read_runs_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRunCsvHeader)
    throw IoError("unexpected header; expected '" + std::string(kRunCsvHeader) + "'");
  std::vector<RunRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 8)
      throw IoError("line " + std::to_string(line_no) + ": expected 8 fields, found " +
                    std::to_string(f.size()));
    rows.push_back({std::string(f[0]), std::string(f[1]), std::string(f[2]),
                    field<std::size_t>(f[3], line_no, "buffer_size"),
                    field<std::int64_t>(f[4], line_no, "seed"),
                    field<std::size_t>(f[5], line_no, "episode"),
                    field<double>(f[6], line_no, "return"),
                    field<std::size_t>(f[7], line_no, "steps")});
  }
  return rows;
}

void export_runs_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_runs_csv(out, rows);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<RunRow> import_runs_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  try {
    return read_runs_csv(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::vector<RunRecord> records_for_experiment(const std::vector<RunRow>& rows,
                                              const std::string& experiment_id) {
  std::vector<RunRecord> records;
  std::map<std::int64_t, std::size_t> by_seed;
  for (const auto& r : rows) {
    if (r.experiment_id != experiment_id) continue;
    auto [it, inserted] = by_seed.try_emplace(r.seed, records.size());
    if (inserted) {
      records.emplace_back();
      records.back().run_id = it->second;
      records.back().seed = r.seed;
    }
    records[it->second].per_episode.push_back({r.episode, r.episode_return, r.steps});
  }
  return records;
}

}  // namespace replaylab
