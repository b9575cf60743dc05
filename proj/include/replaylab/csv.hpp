#ifndef REPLAYLAB_CSV_HPP
#define REPLAYLAB_CSV_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "replaylab/experiment.hpp"

namespace replaylab {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One line of the long-format run table.
struct RunRow {
  std::string experiment_id;
  std::string algorithm;
  std::string representation;
  std::size_t buffer_size = 0;
  std::int64_t seed = 0;
  std::size_t episode = 0;
  double episode_return = 0.0;
  std::size_t steps = 0;
  friend bool operator==(const RunRow&, const RunRow&) = default;
};

inline constexpr const char* kRunCsvHeader =
    "experiment_id,algorithm,representation,buffer_size,seed,episode,return,steps";
inline constexpr const char* kAggregateCsvHeader =
    "experiment_id,algorithm,representation,buffer_size,episode,mean_return,stderr_return,runs";

std::vector<RunRow> to_rows(const ExperimentConfig& cfg, const std::vector<RunRecord>& records);

/// Reals are written with 17 significant digits so a read-back is exact.
void write_runs_csv(std::ostream& out, const std::vector<RunRow>& rows, bool header = true);
void write_aggregate_csv(std::ostream& out, const ExperimentConfig& cfg, const AggregateCurve& curve,
                         bool header = true);

/// Throws IoError on a header or field mismatch.
std::vector<RunRow> read_runs_csv(std::istream& in);

void export_runs_csv(const std::filesystem::path& path, const std::vector<RunRow>& rows);
std::vector<RunRow> import_runs_csv(const std::filesystem::path& path);

/// Groups rows (in first-seen experiment order) back into per-run records.
std::vector<RunRecord> records_for_experiment(const std::vector<RunRow>& rows,
                                              const std::string& experiment_id);

}  // namespace replaylab

#endif  // REPLAYLAB_CSV_HPP
