// Command-line front end: map generation, single episodes, training,
// benchmarking and trajectory plots.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hiernav/nn/checkpoint.hpp"
#include "hiernav/runner/benchmark.hpp"
#include "hiernav/runner/plot.hpp"
#include "hiernav/runner/settings.hpp"

namespace fs = std::filesystem;
using namespace hiernav;
using runner::ConfigError;
using runner::CorpusError;

namespace
{

constexpr int kExitConfig = 2;
constexpr int kExitCorpus = 3;

struct Common
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

runner::Settings settings_from(const Common & c, const std::string & task_override = "")
{
  runner::KeyValueConfig kv = c.config.empty() ? runner::KeyValueConfig{} : runner::KeyValueConfig::load(c.config);
  if (!task_override.empty()) {
    kv.set("task", task_override);
  }
  runner::Settings s = runner::read_settings(kv);
  if (c.seed) {
    runner::apply_seed(s, *c.seed);
  }
  return s;
}

void write_file(const fs::path & path, const std::string & text)
{
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << text;
}

world::GroundTruthMap read_map(const std::string & path)
{
  try {
    return world::load_map_file(path);
  } catch (const std::exception & e) {
    throw CorpusError(path + ": " + e.what());
  }
}

std::optional<nn::PolicyNet> policy_for(runner::PlannerKind kind, const std::string & checkpoint)
{
  if (kind != runner::PlannerKind::Learned) {
    return std::nullopt;
  }
  if (checkpoint.empty()) {
    throw ConfigError("the learned planner needs --checkpoint");
  }
  try {
    return runner::load_policy(checkpoint);
  } catch (const nn::CheckpointError & e) {
    throw ConfigError(e.what());
  }
}

std::string metrics_line(const runner::EpisodeMetrics & m)
{
  char line[256];
  std::snprintf(
    line, sizeof(line), "distance_m=%.6f steps=%d success=%d coverage=%.6f compute_s=%.6f",
    m.distance, m.steps, m.success ? 1 : 0, m.coverage, m.compute_s);
  std::string text = line;
  if (!m.failure.empty()) {
    text += " failure=\"" + m.failure + "\"";
  }
  return text;
}

std::string steps_csv(const std::vector<runner::StepRecord> & records)
{
  std::string csv = "step,x,y,beacon,waypoint,reward,distance_m\n";
  char line[256];
  for (const runner::StepRecord & r : records) {
    std::snprintf(
      line, sizeof(line), "%d,%.6f,%.6f,%d,%d,%.6f,%.6f\n", r.step, r.pose.x, r.pose.y, r.beacon, r.waypoint,
      r.reward, r.distance);
    csv += line;
  }
  return csv;
}

int cmd_gen_maps(const Common & c, const std::optional<std::string> & style, std::optional<int> count,
  std::optional<int> width, std::optional<int> height)
{
  runner::Settings s = settings_from(c);
  if (style) {
    s.maps.style = runner::parse_style(*style);
  }
  s.maps.width = width.value_or(s.maps.width);
  s.maps.height = height.value_or(s.maps.height);
  const int n = count.value_or(s.map_count);
  if (n < 1) {
    throw ConfigError("count must be at least 1");
  }
  const std::vector<world::GroundTruthMap> maps = runner::generate_maps(s.seed, n, s.maps);
  for (int i = 0; i < n; ++i) {
    write_file(fs::path(c.out) / runner::map_file_name(i), world::to_text(maps[i]));
  }
  std::cout << "wrote " << n << ' ' << runner::to_string(s.maps.style) << " maps to " << c.out << '\n';
  return 0;
}

int cmd_episode(const Common & c, runner::Task task, const std::string & map_path, const std::string & planner_name,
  const std::string & checkpoint)
{
  runner::Settings s = settings_from(c, runner::to_string(task));
  const world::GroundTruthMap map = read_map(map_path);
  const runner::PlannerKind kind = runner::parse_planner(planner_name);
  const std::optional<nn::PolicyNet> policy = policy_for(kind, checkpoint);
  std::ostringstream dump;
  runner::EpisodeHooks hooks;
  if (!c.out.empty()) {
    hooks.debug = &dump;
  }
  const runner::EpisodeResult result = runner::run_episode(
    map, {kind, policy ? &*policy : nullptr}, s.episode(), hooks);
  std::cout << runner::to_string(kind) << ' ' << metrics_line(result.metrics) << '\n';
  if (!c.out.empty()) {
    const fs::path dir(c.out);
    write_file(dir / "steps.csv", steps_csv(result.records));
    write_file(dir / "trajectory.svg",
      runner::emit_plot(runner::plot_input(result, map, task == runner::Task::Navigation)));
    if (!dump.str().empty()) {
      write_file(dir / "graph.jsonl", dump.str());
    }
  }
  return 0;
}

int cmd_train(const Common & c, const std::string & maps_dir, std::optional<int> episodes)
{
  runner::Settings s = settings_from(c);
  if (episodes) {
    s.training.episodes = *episodes;
  }
  std::vector<world::GroundTruthMap> maps;
  if (!maps_dir.empty()) {
    for (runner::NamedMap & m : runner::load_corpus(maps_dir)) {
      maps.push_back(std::move(m.map));
    }
  } else {
    maps = runner::generate_maps(s.seed, s.map_count, s.maps);
  }
  const fs::path dir(c.out);
  fs::create_directories(dir);
  std::ofstream log(dir / "train_log.csv", std::ios::binary);
  if (!log) {
    throw std::runtime_error("cannot write " + (dir / "train_log.csv").string());
  }
  train::Trainer trainer(s.training.network, s.training.trainer);
  auto checkpoint = [&](int episode) {
      char name[64];
      std::snprintf(name, sizeof(name), "checkpoint_%05d.ckpt", episode);
      runner::save_policy(trainer.policy(), (dir / name).string());
      runner::save_policy(trainer.policy(), (dir / "policy.ckpt").string());
    };
  const runner::TrainingSummary summary = runner::train_policy(trainer, maps, s.training, &log, checkpoint);
  std::cout << "episodes=" << summary.episodes << " train_steps=" << summary.train_steps
            << " transitions=" << summary.transitions << " final_return=" << summary.mean_return_last
            << " finite=" << (summary.finite ? 1 : 0) << '\n';
  return summary.finite ? 0 : 1;
}

int cmd_bench(const Common & c, const std::string & maps_dir, const std::string & planners_flag,
  const std::string & task, const std::string & checkpoint, std::optional<int> workers)
{
  runner::Settings s = settings_from(c, task);
  std::vector<std::string> names = planners_flag.empty() ? s.planners : runner::split_list(planners_flag);
  if (names.empty()) {
    names = s.episode().task == runner::Task::Exploration ?
      std::vector<std::string>{"nearest_frontier", "random"} :
      std::vector<std::string>{"replan_navigate", "random"};
  }
  const std::vector<runner::NamedMap> maps = runner::load_corpus(maps_dir);
  std::optional<nn::PolicyNet> policy;
  std::vector<runner::PlannerSpec> planners;
  for (const std::string & name : names) {
    const runner::PlannerKind kind = runner::parse_planner(name);
    if (kind == runner::PlannerKind::Learned && !policy) {
      policy = policy_for(kind, checkpoint);
    }
    planners.push_back({kind, kind == runner::PlannerKind::Learned ? &*policy : nullptr});
  }
  const std::vector<runner::BenchRow> rows = runner::benchmark(planners, maps, s.episode(), workers.value_or(s.workers));
  const auto summary = runner::summarize(rows);
  std::ostringstream csv;
  std::ostringstream table;
  runner::write_results_csv(rows, csv);
  runner::write_summary(summary, table);
  write_file(fs::path(c.out) / "results.csv", csv.str());
  write_file(fs::path(c.out) / "summary.txt", table.str());
  std::cout << table.str();
  return 0;
}

runner::PlotInput plot_from_dump(const world::GroundTruthMap & map, const std::string & dump_path)
{
  std::ifstream in(dump_path);
  if (!in) {
    throw CorpusError("cannot read " + dump_path);
  }
  runner::PlotInput plot;
  plot.shape = map.shape();
  plot.truth = map.cells();
  std::string line;
  nlohmann::json last;
  while (std::getline(in, line)) {
    if (line.empty()) {
      continue;
    }
    try {
      last = nlohmann::json::parse(line);
      const auto & node = last.at("nodes").at(last.at("current").get<int>());
      plot.trajectory.push_back({node.at(0).get<double>(), node.at(1).get<double>()});
    } catch (const std::exception & e) {
      throw CorpusError(dump_path + ": " + e.what());
    }
  }
  if (plot.trajectory.empty()) {
    throw CorpusError(dump_path + ": no records");
  }
  for (int b : last.at("beacons").get<std::vector<int>>()) {
    const auto & node = last.at("nodes").at(b);
    plot.beacons.push_back({node.at(0).get<double>(), node.at(1).get<double>()});
  }
  if (map.target()) {
    plot.target = map.shape().center(*map.target());
  }
  return plot;
}

int cmd_plot(const Common & c, const std::string & map_path, const std::string & dump_path,
  const std::string & planner_name, const std::string & task, const std::string & checkpoint)
{
  runner::Settings s = settings_from(c, task);
  const world::GroundTruthMap map = read_map(map_path);
  runner::PlotInput plot;
  if (!dump_path.empty()) {
    plot = plot_from_dump(map, dump_path);
  } else {
    const runner::PlannerKind kind = runner::parse_planner(planner_name);
    const std::optional<nn::PolicyNet> policy = policy_for(kind, checkpoint);
    const runner::EpisodeResult result = runner::run_episode(map, {kind, policy ? &*policy : nullptr}, s.episode());
    plot = runner::plot_input(result, map, s.episode().task == runner::Task::Navigation);
  }
  const std::string svg = runner::emit_plot(plot);
  if (c.out.empty()) {
    std::cout << svg;
  } else {
    write_file(c.out, svg);
  }
  return 0;
}

void add_common(CLI::App * app, Common & c, bool out_required, const std::string & out_help)
{
  app->add_option("--config", c.config, "Flat key=value configuration file");
  app->add_option("--seed", c.seed, "Seed for maps, episodes, networks and training");
  auto * out = app->add_option("--out", c.out, out_help);
  if (out_required) {
    out->required();
  }
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Hierarchical viewpoint-graph exploration and navigation toolkit"};
  app.require_subcommand(1);

  Common common;
  std::optional<std::string> style;
  std::optional<int> count;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<int> episodes;
  std::optional<int> workers;
  std::string map_path;
  std::string maps_dir;
  std::string planner;
  std::string planners;
  std::string task;
  std::string checkpoint;
  std::string dump;

  auto * gen = app.add_subcommand("gen-maps", "Generate a map corpus");
  add_common(gen, common, true, "Output directory");
  gen->add_option("--style", style, "rooms, cave or corridor");
  gen->add_option("--count", count, "Number of maps");
  gen->add_option("--width", width, "Width in cells");
  gen->add_option("--height", height, "Height in cells");

  auto * explore = app.add_subcommand("explore", "Run one exploration episode");
  auto * navigate = app.add_subcommand("navigate", "Run one navigation episode");
  for (auto * sub : {explore, navigate}) {
    add_common(sub, common, false, "Directory for steps.csv, trajectory.svg and graph.jsonl");
    sub->add_option("--map", map_path, "Map file")->required();
    sub->add_option("--checkpoint", checkpoint, "Policy checkpoint for the learned planner");
  }
  explore->add_option("--planner", planner, "learned, nearest_frontier or random")->default_val("nearest_frontier");
  navigate->add_option("--planner", planner, "learned, replan_navigate or random")->default_val("replan_navigate");

  auto * trn = app.add_subcommand("train", "Train the hierarchical policy");
  add_common(trn, common, true, "Directory for train_log.csv and checkpoints");
  trn->add_option("--maps", maps_dir, "Training map directory (generated from the config when absent)");
  trn->add_option("--episodes", episodes, "Training episodes");

  auto * bench = app.add_subcommand("bench", "Benchmark planners over a map corpus");
  add_common(bench, common, true, "Directory for results.csv and summary.txt");
  bench->add_option("--maps", maps_dir, "Map directory")->required();
  bench->add_option("--planners", planners, "Comma-separated planner list");
  bench->add_option("--task", task, "exploration or navigation");
  bench->add_option("--checkpoint", checkpoint, "Policy checkpoint for the learned planner");
  bench->add_option("--workers", workers, "Worker threads");

  auto * plot = app.add_subcommand("plot", "Render a trajectory as SVG");
  add_common(plot, common, false, "SVG file (stdout when absent)");
  plot->add_option("--map", map_path, "Map file")->required();
  plot->add_option("--dump", dump, "Graph dump (JSON lines) to draw instead of running an episode");
  plot->add_option("--planner", planner, "Planner to run")->default_val("nearest_frontier");
  plot->add_option("--task", task, "exploration or navigation");
  plot->add_option("--checkpoint", checkpoint, "Policy checkpoint for the learned planner");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp & e) {
    return app.exit(e);
  } catch (const CLI::ParseError & e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen_maps(common, style, count, width, height);
    }
    if (explore->parsed()) {
      return cmd_episode(common, runner::Task::Exploration, map_path, planner, checkpoint);
    }
    if (navigate->parsed()) {
      return cmd_episode(common, runner::Task::Navigation, map_path, planner, checkpoint);
    }
    if (trn->parsed()) {
      return cmd_train(common, maps_dir, episodes);
    }
    if (bench->parsed()) {
      return cmd_bench(common, maps_dir, planners, task, checkpoint, workers);
    }
    if (plot->parsed()) {
      return cmd_plot(common, map_path, dump, planner, task, checkpoint);
    }
  } catch (const ConfigError & e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const CorpusError & e) {
    std::cerr << "corpus error: " << e.what() << '\n';
    return kExitCorpus;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
