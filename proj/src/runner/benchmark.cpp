#include "hiernav/runner/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <thread>

#include "hiernav/runner/config.hpp"

namespace hiernav::runner
{

namespace fs = std::filesystem;

std::vector<NamedMap> load_corpus(const std::string & directory)
{
  std::error_code ec;
  if (!fs::is_directory(directory, ec)) {
    throw CorpusError("map directory not found: " + directory);
  }
  std::vector<fs::path> files;
  for (const auto & entry : fs::directory_iterator(directory, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  if (ec) {
    throw CorpusError("cannot list " + directory + ": " + ec.message());
  }
  std::sort(files.begin(), files.end());
  std::vector<NamedMap> maps;
  for (const fs::path & f : files) {
    try {
      maps.push_back({f.stem().string(), world::load_map_file(f.string())});
    } catch (const std::exception & e) {
      throw CorpusError(f.string() + ": " + e.what());
    }
  }
  if (maps.empty()) {
    throw CorpusError("no maps in " + directory);
  }
  return maps;
}

std::vector<BenchRow> benchmark(
  const std::vector<PlannerSpec> & planners, const std::vector<NamedMap> & maps,
  const EpisodeConfig & config, int workers)
{
  if (planners.empty() || maps.empty()) {
    throw ConfigError("benchmark needs at least one planner and one map");
  }
  config.check();
  for (const PlannerSpec & p : planners) {
    if (p.kind == PlannerKind::NearestFrontier && config.task != Task::Exploration) {
      throw ConfigError("nearest_frontier only solves exploration");
    }
    if (p.kind == PlannerKind::ReplanNavigate && config.task != Task::Navigation) {
      throw ConfigError("replan_navigate only solves navigation");
    }
    if (p.kind == PlannerKind::Learned && p.policy == nullptr) {
      throw ConfigError("learned planner needs a policy checkpoint");
    }
  }
  std::vector<std::size_t> order(maps.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {return maps[a].name < maps[b].name;});

  const std::size_t jobs = planners.size() * maps.size();
  std::vector<BenchRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
      for (std::size_t job = next++; job < jobs; job = next++) {
        const PlannerSpec & planner = planners[job / maps.size()];
        const std::size_t m = order[job % maps.size()];
        BenchRow & row = rows[job];
        row.planner = to_string(planner.kind);
        row.map = maps[m].name;
        row.task = config.task;
        EpisodeConfig episode = config;
        episode.seed = config.seed * 1000003ULL + m;
        try {
          row.metrics = run_episode(maps[m].map, planner, episode).metrics;
        } catch (const std::exception & e) {
          row.metrics = EpisodeMetrics{};
          row.metrics.failure = e.what();
        }
      }
    };
  const int threads = std::max(1, std::min<int>(workers, static_cast<int>(jobs)));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(work);
    }
    for (std::thread & t : pool) {
      t.join();
    }
  }
  return rows;
}

std::vector<PlannerSummary> summarize(const std::vector<BenchRow> & rows)
{
  std::vector<PlannerSummary> out;
  for (const BenchRow & row : rows) {
    auto it = std::find_if(out.begin(), out.end(), [&](const PlannerSummary & s) {return s.planner == row.planner;});
    if (it == out.end()) {
      out.push_back({row.planner});
    }
  }
  for (PlannerSummary & s : out) {
    std::vector<double> distances;
    for (const BenchRow & row : rows) {
      if (row.planner != s.planner) {
        continue;
      }
      distances.push_back(row.metrics.distance);
      s.mean_steps += row.metrics.steps;
      s.success_rate += row.metrics.success ? 1.0 : 0.0;
      s.mean_compute_s += row.metrics.compute_s;
    }
    const double n = static_cast<double>(distances.size());
    s.episodes = static_cast<int>(distances.size());
    for (double d : distances) {
      s.mean_distance += d;
    }
    s.mean_distance /= n;
    s.mean_steps /= n;
    s.success_rate /= n;
    s.mean_compute_s /= n;
    if (distances.size() > 1) {
      double ss = 0.0;
      for (double d : distances) {
        ss += (d - s.mean_distance) * (d - s.mean_distance);
      }
      s.std_distance = std::sqrt(ss / (n - 1.0));
    }
  }
  return out;
}

void write_results_csv(const std::vector<BenchRow> & rows, std::ostream & out)
{
  out << "planner,map,task,distance_m,steps,success,compute_s\n";
  char line[512];
  for (const BenchRow & r : rows) {
    std::snprintf(
      line, sizeof(line), "%s,%s,%s,%.6f,%d,%d,%.6f\n", r.planner.c_str(), r.map.c_str(),
      to_string(r.task).c_str(), r.metrics.distance, r.metrics.steps, r.metrics.success ? 1 : 0,
      r.metrics.compute_s);
    out << line;
  }
}

void write_summary(const std::vector<PlannerSummary> & summaries, std::ostream & out)
{
  char line[512];
  std::snprintf(
    line, sizeof(line), "%-18s %8s %22s %10s %9s %12s\n", "planner", "episodes", "distance_m (mean+-std)",
    "steps", "success", "compute_s");
  out << line;
  for (const PlannerSummary & s : summaries) {
    char distance[64];
    std::snprintf(distance, sizeof(distance), "%.2f +- %.2f", s.mean_distance, s.std_distance);
    std::snprintf(
      line, sizeof(line), "%-18s %8d %22s %10.2f %8.1f%% %12.6f\n", s.planner.c_str(), s.episodes, distance,
      s.mean_steps, 100.0 * s.success_rate, s.mean_compute_s);
    out << line;
  }
}

}  // namespace hiernav::runner
