#ifndef HIERNAV_RUNNER_BENCHMARK_HPP_
#define HIERNAV_RUNNER_BENCHMARK_HPP_

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hiernav/runner/episode.hpp"

namespace hiernav::runner
{

/// A map directory could not be read or holds no valid map.
class CorpusError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct NamedMap
{
  std::string name;
  world::GroundTruthMap map;
};

/// Loads every `*.txt` map of `directory`, sorted by file name.
std::vector<NamedMap> load_corpus(const std::string & directory);

struct BenchRow
{
  std::string planner;
  std::string map;
  Task task{Task::Exploration};
  EpisodeMetrics metrics;
};

struct PlannerSummary
{
  std::string planner;
  int episodes{0};
  double mean_distance{0.0};
  double std_distance{0.0};
  double mean_steps{0.0};
  double success_rate{0.0};
  double mean_compute_s{0.0};
};

/// Runs every planner on every map with `workers` threads. Episode seeds
/// depend on the map position only, so all planners face the same draws.
/// An exception inside an episode becomes a failure row. Rows come back
/// ordered by planner (as given), then map name.
std::vector<BenchRow> benchmark(
  const std::vector<PlannerSpec> & planners, const std::vector<NamedMap> & maps,
  const EpisodeConfig & config, int workers = 1);

/// One summary per planner, in order of first appearance.
std::vector<PlannerSummary> summarize(const std::vector<BenchRow> & rows);

void write_results_csv(const std::vector<BenchRow> & rows, std::ostream & out);
void write_summary(const std::vector<PlannerSummary> & summaries, std::ostream & out);

}  // namespace hiernav::runner

#endif  // HIERNAV_RUNNER_BENCHMARK_HPP_
