// Acceptance suite: one PASS/FAIL line per criterion. Pass a criterion name
// to run only that one; the exit status is nonzero when any selected
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gradcheck.hpp"
#include "hiernav/baselines/astar.hpp"
#include "hiernav/baselines/replan.hpp"
#include "hiernav/graph/planning_set.hpp"
#include "hiernav/nn/layers.hpp"
#include "hiernav/nn/networks.hpp"
#include "hiernav/runner/benchmark.hpp"
#include "hiernav/runner/episode.hpp"
#include "hiernav/runner/mapgen.hpp"
#include "hiernav/runner/training.hpp"
#include "hiernav/train/losses.hpp"
#include "hiernav/train/trainer.hpp"
#include "hiernav/world/sensing.hpp"
#include "oracles.hpp"

using namespace hiernav;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace
{

struct Outcome
{
  bool pass{false};
  std::string detail;
};

std::string fmt(const char * format, double a, double b = 0.0, double c = 0.0, double d = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c, d);
  return buf;
}

// ---------------------------------------------------------------------------

constexpr int kSoundnessMaps = 100;
constexpr double kSoundnessBudgetS = 300.0;

Outcome graph_soundness()
{
  const auto start = Clock::now();
  const runner::MapStyle styles[] = {runner::MapStyle::Rooms, runner::MapStyle::Cave, runner::MapStyle::Corridor};
  nn::NetworkConfig net;
  net.embed_dim = 16;
  net.encoder_layers = 1;
  net.ff_hidden = 32;
  const nn::PolicyNet policy(net);
  long edges = 0;
  long traversals = 0;
  long edge_violations = 0;
  long traversal_violations = 0;
  for (int i = 0; i < kSoundnessMaps; ++i) {
    const world::GroundTruthMap m =
      runner::generate_map(9000 + i, {styles[i % 3], 40, 30, 1.0});
    runner::EpisodeConfig c;
    c.seed = static_cast<std::uint64_t>(i);
    c.sensor_range = i % 2 == 0 ? 20.0 : 8.0;
    c.lattice = {40, 30};
    runner::EpisodeState s = runner::start_episode(m, c);
    std::mt19937_64 rng(static_cast<std::uint64_t>(i));
    auto check_graph = [&]() {
        for (std::size_t a = 0; a < s.graph.size(); ++a) {
          for (int b : s.graph.adjacency[a]) {
            if (static_cast<int>(a) < b) {
              ++edges;
              edge_violations += oracle::belief_los(s.belief, s.graph.position(a), s.graph.position(b)) ? 0 : 1;
            }
          }
        }
      };
    check_graph();
    while (!s.done) {
      const auto & obs = *s.observation;
      train::Decision d;
      if (i % 4 == 3 && !obs.beacons.empty()) {
        d = train::decide(policy, obs, rng, false);
      } else {
        d.beacon = 0;
        d.waypoint = std::uniform_int_distribution<int>(0, static_cast<int>(obs.neighbors.size()) - 1)(rng);
      }
      const world::Point from = s.pose;
      runner::step_episode(s, d);
      ++traversals;
      traversal_violations += oracle::truth_los(m, from, s.pose) ? 0 : 1;
      check_graph();
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {edge_violations == 0 && traversal_violations == 0 && seconds < kSoundnessBudgetS,
    fmt("%.0f belief-LoS edge violations of %.0f edges, %.0f ground-truth violations of %.0f moves",
      static_cast<double>(edge_violations), static_cast<double>(edges),
      static_cast<double>(traversal_violations), static_cast<double>(traversals)) + fmt(" in %.1f s", seconds)};
}

// ---------------------------------------------------------------------------

constexpr int kCoverInstances = 1000;
constexpr double kCoverBudgetS = 60.0;

Outcome beacon_cover()
{
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dims(8, 24);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mismatches = 0;
  int uncovered = 0;
  int outside = 0;
  long candidates_total = 0;
  for (int trial = 0; trial < kCoverInstances; ++trial) {
    const int w = dims(rng);
    const int h = dims(rng);
    const world::GroundTruthMap m = oracle::random_map(rng, w, h, 0.1 + 0.2 * unit(rng));
    world::BeliefMap belief(m.shape());
    const int poses = 1 + static_cast<int>(unit(rng) * 4);
    for (int p = 0; p < poses; ++p) {
      world::sense_and_update(
        m.shape().center({static_cast<int>(unit(rng) * w), static_cast<int>(unit(rng) * h)}), m, belief, 6.0);
    }
    const graph::ViewpointSet nodes = graph::sample_viewpoints(belief, {w, h});
    std::vector<int> u;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (unit(rng) < 0.6) {
        u.push_back(static_cast<int>(i));
      }
    }
    candidates_total += static_cast<long>(u.size());
    const double radius = 0.5 + unit(rng) * 10.0;
    const std::vector<int> beacons = graph::aggregate_beacons(u, nodes.positions, belief, radius);
    if (beacons != oracle::beacon_retrace(u, nodes.positions, belief, radius)) {
      ++mismatches;
    }
    for (int b : beacons) {
      outside += std::binary_search(u.begin(), u.end(), b) ? 0 : 1;
    }
    for (int v : u) {
      bool covered = false;
      for (int b : beacons) {
        covered = covered || (world::distance(nodes.positions[v], nodes.positions[b]) <= radius &&
          oracle::belief_los(belief, nodes.positions[v], nodes.positions[b]));
      }
      uncovered += covered ? 0 : 1;
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {mismatches == 0 && uncovered == 0 && outside == 0 && seconds < kCoverBudgetS,
    fmt("%.0f retrace mismatches, %.0f uncovered, %.0f beacons outside U", mismatches, uncovered, outside) +
    fmt(" over %.0f candidates, %.1f s", static_cast<double>(candidates_total), seconds)};
}

// ---------------------------------------------------------------------------

constexpr double kRowSumTolerance = 1e-6;
constexpr double kHandTolerance = 1e-9;

Outcome attention_correctness()
{
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::bernoulli_distribution masked(0.5);
  double worst_row = 0.0;
  int nonzero_masked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 9;
    const int m = 1 + (trial / 9) % 11;
    nn::Tape tape;
    nn::Mask mask(n, m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < m; ++j) {
        mask(i, j) = masked(rng) ? 1 : 0;
      }
      mask(i, (i * 7) % m) = 0;
    }
    auto rand = [&](int r, int c) {return tape.constant(nn::Matrix::NullaryExpr(r, c, [&]() {return u(rng);}));};
    const nn::AttentionResult r = nn::masked_attention(rand(n, 4), rand(m, 4), rand(m, 4), mask);
    for (int i = 0; i < n; ++i) {
      worst_row = std::max(worst_row, std::abs(r.weights.value().row(i).sum() - 1.0));
      for (int j = 0; j < m; ++j) {
        nonzero_masked += mask(i, j) && r.weights.value()(i, j) != 0.0 ? 1 : 0;
      }
    }
  }

  // Hand case: two queries, three keys, query 0 cannot see key 1.
  nn::Tape tape;
  nn::Matrix q(2, 2);
  q << 1.0, 0.0, 0.5, -1.0;
  nn::Matrix k(3, 2);
  k << 1.0, 1.0, 0.0, 2.0, -1.0, 0.5;
  nn::Matrix v(3, 2);
  v << 1.0, 2.0, 3.0, -1.0, 0.0, 4.0;
  nn::Mask mask(2, 3);
  mask << 0, 1, 0, 0, 0, 0;
  const nn::AttentionResult r = nn::masked_attention(tape.constant(q), tape.constant(k), tape.constant(v), mask);
  const double s = 1.0 / std::sqrt(2.0);
  const double w00 = std::exp(s) / (std::exp(s) + std::exp(-s));
  const double w02 = 1.0 - w00;
  const double z = std::exp(-0.5 * s) + std::exp(-2.0 * s) + std::exp(-1.0 * s);
  const double w10 = std::exp(-0.5 * s) / z;
  const double w11 = std::exp(-2.0 * s) / z;
  const double w12 = std::exp(-1.0 * s) / z;
  nn::Matrix want_w(2, 3);
  want_w << w00, 0.0, w02, w10, w11, w12;
  nn::Matrix want_o(2, 2);
  want_o << w00 * 1.0 + w02 * 0.0, w00 * 2.0 + w02 * 4.0,
    w10 * 1.0 + w11 * 3.0 + w12 * 0.0, w10 * 2.0 - w11 * 1.0 + w12 * 4.0;
  const double hand_err = std::max(
    (r.weights.value() - want_w).cwiseAbs().maxCoeff(), (r.output.value() - want_o).cwiseAbs().maxCoeff());
  return {worst_row <= kRowSumTolerance && nonzero_masked == 0 && hand_err <= kHandTolerance &&
    r.weights.value()(0, 1) == 0.0,
    fmt("max |row sum - 1| = %.2e, %.0f nonzero masked weights, hand case error %.2e", worst_row, nonzero_masked,
      hand_err)};
}

// ---------------------------------------------------------------------------

constexpr int kGradientSeeds = 10;
constexpr double kGradientBudgetS = 120.0;

Outcome gradient_check()
{
  const auto start = Clock::now();
  double worst = 0.0;
  std::size_t checked = 0;
  auto note = [&](const gradcheck::Report & r) {
      worst = std::max(worst, r.worst);
      checked += r.checked;
    };
  auto random = [](std::mt19937_64 & rng, int rows, int cols) {
      std::uniform_real_distribution<double> u(-1.0, 1.0);
      return nn::Matrix(nn::Matrix::NullaryExpr(rows, cols, [&]() {return u(rng);}));
    };
  auto project = [&](nn::Tape & tape, const nn::Tensor & t, std::uint64_t seed) {
      std::mt19937_64 rng(seed);
      return nn::sum(nn::mul(t, tape.constant(random(rng, static_cast<int>(t.rows()), static_cast<int>(t.cols())))));
    };
  for (std::uint64_t seed = 0; seed < kGradientSeeds; ++seed) {
    std::mt19937_64 rng(seed + 500);
    // Every layer type, with its input as a checked parameter too.
    nn::ParameterStore store;
    const int d = 4;
    const int x_in = store.add("x", random(rng, 5, d));
    const int q_in = store.add("q", random(rng, 2, d));
    const int g_in = store.add("gate", random(rng, 5, d));
    const nn::Linear linear = nn::Linear::create(store, "linear", d, 3, rng);
    const nn::LayerNorm norm = nn::LayerNorm::create(store, "norm", d);
    store[norm.gain].value = random(rng, 1, d).array() + 1.5;
    store[norm.bias].value = random(rng, 1, d);
    const nn::Attention attention = nn::Attention::create(store, "attn", d, rng);
    const nn::FeedForward ff = nn::FeedForward::create(store, "ff", d, 6, rng);
    const nn::AttentionBlock block = nn::AttentionBlock::create(store, "block", d, 6, rng);
    const nn::AttentionBlock cross = nn::AttentionBlock::create(store, "cross", d, 6, rng);
    const nn::Pointer pointer = nn::Pointer::create(store, "pointer", d, 10.0, rng);
    nn::Mask mask(5, 5);
    std::bernoulli_distribution hide(0.4);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        mask(i, j) = i != j && hide(rng) ? 1 : 0;
      }
    }
    note(gradcheck::check(store, [&](nn::Tape & tape) {
        const nn::Tensor x = tape.param(store, x_in);
        const nn::Tensor q = tape.param(store, q_in);
        const nn::Tensor g = tape.param(store, g_in);
        nn::Tensor total = project(tape, linear.forward(tape, store, x), seed);
        total = nn::add(total, project(tape, norm.forward(tape, store, x), seed + 1));
        total = nn::add(total, project(tape, attention.forward(tape, store, x, x, mask).output, seed + 2));
        total = nn::add(total, project(tape, ff.forward(tape, store, x), seed + 3));
        total = nn::add(total, project(tape, block.forward(tape, store, x, x, mask), seed + 4));
        total = nn::add(total, project(tape, cross.forward(tape, store, q, x, nn::Mask::Zero(2, 5)), seed + 5));
        total = nn::add(total, project(tape, pointer.log_probs(tape, store, nn::row_block(q, 0, 1), x), seed + 6));
        total = nn::add(total, project(tape, nn::masked_softmax(nn::matmul_nt(x, g), mask), seed + 7));
        total = nn::add(total, project(tape, nn::exp(nn::tanh(nn::sub(x, g))), seed + 8));
        total = nn::add(total, project(tape, nn::l2_norm(nn::concat_cols(x, g)), seed + 9));
        total = nn::add(total, project(tape, nn::log(nn::add_scalar(nn::mul(g, g), 0.5)), seed + 10));
        total = nn::add(total, nn::mean(nn::relu(nn::matmul_nt(x, g))));
        return total;
      }));

    // Both full networks.
    nn::NetworkConfig cfg;
    cfg.embed_dim = 6;
    cfg.encoder_layers = 2;
    cfg.ff_hidden = 8;
    cfg.seed = seed;
    cfg.feature_dim = seed % 2 == 0 ? graph::kExplorationFeatures : graph::kNavigationFeatures;
    const graph::Observation obs = gradcheck::random_observation(rng, 6, cfg.feature_dim);
    nn::PolicyNet policy(cfg);
    note(gradcheck::check(policy.params(), [&](nn::Tape & tape) {
        const nn::Tensor enc = policy.encode(tape, obs);
        const nn::Tensor cand = policy.candidate_features(tape, enc, obs);
        nn::Tensor total = nn::add(project(tape, policy.beacon_head(tape, enc, obs).log_probs, seed),
        project(tape, cand, seed + 1));
        for (std::size_t b = 0; b < obs.beacons.size(); ++b) {
          total = nn::add(total,
          project(tape, policy.waypoint_head(tape, enc, cand, obs, static_cast<int>(b)).log_probs, seed + 2 + b));
        }
        return total;
      }));
    nn::CriticNet critic(cfg);
    note(gradcheck::check(critic.params(), [&](nn::Tape & tape) {
        const nn::Tensor enc = critic.encode(tape, obs);
        const nn::Tensor cand = critic.candidate_features(tape, enc, obs);
        return nn::add(project(tape, critic.q_values(tape, enc, cand, obs, 0), seed), critic.q(tape, obs, 0, 0));
      }));
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return {worst < gradcheck::kTolerance && seconds < kGradientBudgetS,
    fmt("worst relative error %.2e over %.0f entries and %.0f seeds, %.1f s", worst, static_cast<double>(checked),
      kGradientSeeds, seconds)};
}

// ---------------------------------------------------------------------------

constexpr double kIdentityTolerance = 1e-9;

Outcome loss_identities()
{
  std::vector<std::string> failed;
  auto expect = [&](bool ok, const std::string & what) {
      if (!ok) {
        failed.push_back(what);
      }
    };
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.01, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + trial % 6;
    Eigen::VectorXd q(n);
    for (int i = 0; i < n; ++i) {
      q[i] = u(rng);
    }
    const double alpha = pos(rng);
    // Deterministic policy.
    Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(n);
    const int star = trial % n;
    one_hot[star] = 1.0;
    expect(std::abs(train::soft_value(q, one_hot, alpha) - q[star]) <= kIdentityTolerance, "V = Q(a*)");
    // Uniform over two equal actions.
    const double qv = u(rng);
    expect(std::abs(train::soft_value(Eigen::Vector2d(qv, qv), Eigen::Vector2d(0.5, 0.5), alpha) -
      (qv + alpha * std::log(2.0))) <= kIdentityTolerance, "uniform-2 V");
    // Critic loss at exact targets.
    std::vector<double> values(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      values[static_cast<std::size_t>(i)] = q[i];
    }
    expect(train::critic_loss(values, values) == 0.0, "critic loss at targets");
    // Temperature gradient sign.
    Eigen::VectorXd pi(n);
    for (int i = 0; i < n; ++i) {
      pi[i] = pos(rng);
    }
    pi /= pi.sum();
    const double target = pos(rng);
    const double h = train::entropy(pi);
    const double g = train::temperature_loss(alpha, h, target).d_alpha;
    const double want = h - target;
    expect((g > 0) == (want > 0) && (g < 0) == (want < 0), "temperature sign");
    // Coincident contrastive features.
    Eigen::VectorXd f(4);
    for (int i = 0; i < 4; ++i) {
      f[i] = u(rng);
    }
    const double margin = pos(rng);
    expect(std::abs(train::contrastive_loss(f, f, f, margin) - margin) <= kIdentityTolerance, "contrastive = m");
  }
  // Critic loss through the networks: terminal targets equal to current Q.
  nn::NetworkConfig cfg;
  cfg.embed_dim = 8;
  cfg.encoder_layers = 1;
  cfg.ff_hidden = 16;
  const nn::CriticNet critic(cfg);
  const nn::PolicyNet policy(cfg);
  auto obs = std::make_shared<graph::Observation>(gradcheck::random_observation(rng, 6, graph::kExplorationFeatures));
  const auto table = train::critic_table(critic, *obs);
  std::vector<train::Transition> batch;
  for (std::size_t b = 0; b < table.size(); ++b) {
    for (Eigen::Index a = 0; a < table[b].size(); ++a) {
      batch.push_back({obs, static_cast<int>(b), static_cast<int>(a), table[b][a], nullptr, true});
    }
  }
  const double net_loss = train::critic_loss(batch, critic, critic, policy, 0.2, 0.99);
  expect(net_loss <= kIdentityTolerance, "network critic loss at targets");
  std::string detail = failed.empty() ? "all identities hold to 1e-9 over 1000 random cases" : "violated:";
  for (const auto & f : failed) {
    if (detail.find(f) == std::string::npos) {
      detail += " [" + f + "]";
    }
  }
  return {failed.empty(), detail};
}

// ---------------------------------------------------------------------------

constexpr int kTriplets = 10000;

Outcome triplet_property()
{
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> size(3, 20);
  int violations = 0;
  int built = 0;
  for (int i = 0; i < kTriplets; ++i) {
    const int n = size(rng);
    Eigen::VectorXd pi(n);
    Eigen::VectorXd q(n);
    Eigen::VectorXd qt(n);
    for (int j = 0; j < n; ++j) {
      // Peaked and sparse distributions stress the redraw.
      pi[j] = u(rng) < 0.3 ? 0.0 : std::pow(u(rng), 4.0);
      q[j] = u(rng);
      qt[j] = u(rng);
    }
    pi[i % n] += 1e-6;
    pi /= pi.sum();
    const auto t = train::build_triplet(pi, q, qt, 0.5, rng);
    if (!t) {
      ++violations;
      continue;
    }
    ++built;
    violations += t->negative == t->sampled || t->negative == t->positive ? 1 : 0;
  }
  return {violations == 0 && built == kTriplets,
    fmt("%.0f triplets built, %.0f with a- in {a-hat, a+}", built, violations)};
}

// ---------------------------------------------------------------------------

constexpr int kOracleGrids = 50;

Outcome oracle_optimality()
{
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coord(0, 29);
  int astar_mismatch = 0;
  int solvable = 0;
  int replan_mismatch = 0;
  for (int trial = 0; trial < kOracleGrids; ++trial) {
    const world::GroundTruthMap m = oracle::random_map(rng, 30, 30, 0.3);
    const baselines::Traversability map = baselines::Traversability::from_truth(m);
    world::CellIndex s{coord(rng), coord(rng)};
    world::CellIndex g{coord(rng), coord(rng)};
    // Resample until the pair is solvable so every grid contributes.
    for (int tries = 0; tries < 1000; ++tries) {
      if (map.passable(s) && map.passable(g) && oracle::dijkstra_cost(map.free, 30, 30, s, g).straight >= 0) {
        break;
      }
      s = {coord(rng), coord(rng)};
      g = {coord(rng), coord(rng)};
    }
    const oracle::MoveCost want = oracle::dijkstra_cost(map.free, 30, 30, s, g);
    if (want.straight < 0) {
      continue;
    }
    ++solvable;
    const baselines::GridPath p = baselines::astar(s, g, map);
    astar_mismatch += p.straight_moves == want.straight && p.diagonal_moves == want.diagonal ? 0 : 1;
    const world::BeliefMap full = world::BeliefMap::fully_revealed(m);
    const baselines::NavigationResult r = baselines::replan_navigate(m, s, g, 5.0, &full);
    replan_mismatch += r.straight_moves == want.straight && r.diagonal_moves == want.diagonal ? 0 : 1;
  }
  return {astar_mismatch == 0 && replan_mismatch == 0 && solvable == kOracleGrids,
    fmt("%.0f grids, A* cost mismatches %.0f, fully-revealed replanning mismatches %.0f", solvable, astar_mismatch,
      replan_mismatch)};
}

// ---------------------------------------------------------------------------

constexpr int kNavigationMaps = 100;

Outcome navigation_success()
{
  const runner::MapStyle styles[] = {runner::MapStyle::Rooms, runner::MapStyle::Cave, runner::MapStyle::Corridor};
  std::vector<runner::NamedMap> maps;
  for (int i = 0; i < kNavigationMaps; ++i) {
    maps.push_back({runner::map_file_name(i), runner::generate_map(7000 + i, {styles[i % 3], 40, 30, 1.0})});
  }
  runner::EpisodeConfig c;
  c.task = runner::Task::Navigation;
  const auto rows = runner::benchmark({{runner::PlannerKind::ReplanNavigate, nullptr}}, maps, c);
  int success = 0;
  for (const auto & r : rows) {
    success += r.metrics.success ? 1 : 0;
  }
  return {success == kNavigationMaps,
    fmt("%.0f / %.0f generated maps reached", success, kNavigationMaps)};
}

// ---------------------------------------------------------------------------
// Training smoke. Everything that decides the outcome is pinned here.

constexpr std::uint64_t kSmokeSeed = 20240601;
constexpr std::uint64_t kSmokeTrainMapSeed = 101;
constexpr std::uint64_t kSmokeTestMapSeed = 202;
constexpr int kSmokeMaps = 20;
constexpr int kSmokeEpisodes = 500;
constexpr double kSmokeRange = 8.0;
constexpr int kSmokeEmbed = 32;
constexpr int kSmokeLayers = 2;
constexpr double kSmokeLearningRate = 1e-3;
constexpr double kSmokeInitialAlpha = 0.02;
constexpr double kRandomRatio = 0.6;
constexpr double kFrontierRatio = 1.15;

Outcome training_smoke()
{
  const auto start = Clock::now();
  const runner::MapSpec spec{runner::MapStyle::Rooms, 20, 20, 1.0};
  const auto train_maps = runner::generate_maps(kSmokeTrainMapSeed, kSmokeMaps, spec);
  const auto test_maps = runner::generate_maps(kSmokeTestMapSeed, kSmokeMaps, spec);

  runner::TrainingConfig cfg;
  cfg.episodes = kSmokeEpisodes;
  cfg.checkpoint_every = 0;
  cfg.episode.lattice = {20, 20};
  cfg.episode.sensor_range = kSmokeRange;
  cfg.episode.seed = kSmokeSeed;
  cfg.network.embed_dim = kSmokeEmbed;
  cfg.network.encoder_layers = kSmokeLayers;
  cfg.network.ff_hidden = 2 * kSmokeEmbed;
  cfg.network.seed = kSmokeSeed;
  cfg.trainer.seed = kSmokeSeed;
  cfg.trainer.policy_lr = kSmokeLearningRate;
  cfg.trainer.critic_lr = kSmokeLearningRate;
  cfg.trainer.alpha_lr = kSmokeLearningRate;
  cfg.trainer.initial_alpha = kSmokeInitialAlpha;
  // Pinned to the published defaults.
  cfg.trainer.buffer_capacity = 10000;
  cfg.trainer.batch = 64;
  cfg.trainer.gamma = 0.99;
  cfg.trainer.iterations_per_episode = 4;

  train::Trainer trainer(cfg.network, cfg.trainer);
  std::ostringstream log;
  const runner::TrainingSummary summary = runner::train_policy(trainer, train_maps, cfg, &log);

  auto mean_distance = [&](runner::PlannerSpec planner) {
      double total = 0.0;
      int success = 0;
      for (std::size_t i = 0; i < test_maps.size(); ++i) {
        runner::EpisodeConfig e = cfg.episode;
        e.seed = kSmokeSeed + i;
        const auto r = runner::run_episode(test_maps[i], planner, e);
        total += r.metrics.distance;
        success += r.metrics.success ? 1 : 0;
      }
      return std::make_pair(total / static_cast<double>(test_maps.size()), success);
    };
  const auto learned = mean_distance({runner::PlannerKind::Learned, &trainer.policy()});
  const auto random = mean_distance({runner::PlannerKind::Random, nullptr});
  const auto frontier = mean_distance({runner::PlannerKind::NearestFrontier, nullptr});
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  const bool pass = summary.finite && learned.first <= kRandomRatio * random.first &&
    learned.first <= kFrontierRatio * frontier.first;
  return {pass,
    fmt("learned %.1f m (%.0f/20 done), random walk %.1f m, nearest frontier %.1f m", learned.first, learned.second,
      random.first, frontier.first) +
    fmt("; ratios %.2f (<= 0.6) and %.2f (<= 1.15); losses finite %.0f; %.0f s",
      learned.first / random.first, learned.first / frontier.first, summary.finite ? 1.0 : 0.0, seconds)};
}

// ---------------------------------------------------------------------------

int run_cli(const std::string & args)
{
  const std::string command = std::string(HIERNAV_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism()
{
  const fs::path dir = fs::temp_directory_path() / "hiernav_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string d = dir.string();
  std::ofstream(dir / "run.cfg") <<
    "sensor_range = 8\nlattice_columns = 20\nlattice_rows = 20\nwidth = 20\nheight = 20\n"
    "embed_dim = 16\nencoder_layers = 1\nff_hidden = 32\nbatch = 16\nepisodes = 6\ncount = 3\n";
  const std::string cfg = " --config " + d + "/run.cfg --seed 17";
  int bad_exit = 0;
  bad_exit += run_cli("gen-maps" + cfg + " --out " + d + "/maps") != 0;
  bad_exit += run_cli("train" + cfg + " --maps " + d + "/maps --out " + d + "/train") != 0;
  for (const char * run : {"a", "b"}) {
    const std::string out = d + "/" + run;
    bad_exit += run_cli("bench" + cfg + " --maps " + d + "/maps --workers 2 --planners learned,nearest_frontier,random"
      " --checkpoint " + d + "/train/policy.ckpt --out " + out) != 0;
    bad_exit += run_cli("plot" + cfg + " --map " + d + "/maps/map_0001.txt --planner learned --checkpoint " + d +
      "/train/policy.ckpt --out " + out + "/learned.svg") != 0;
    bad_exit += run_cli("explore" + cfg + " --map " + d + "/maps/map_0000.txt --planner random --out " + out +
      "/explore") != 0;
  }
  const std::string csv_a = slurp(dir / "a/results.csv");
  const bool csv_same = !csv_a.empty() && csv_a == slurp(dir / "b/results.csv");
  const std::string svg_a = slurp(dir / "a/learned.svg");
  const bool svg_same = !svg_a.empty() && svg_a == slurp(dir / "b/learned.svg") &&
    slurp(dir / "a/explore/trajectory.svg") == slurp(dir / "b/explore/trajectory.svg") &&
    !slurp(dir / "a/explore/trajectory.svg").empty();
  fs::remove_all(dir);
  return {bad_exit == 0 && csv_same && svg_same,
    fmt("results.csv identical %.0f, SVGs identical %.0f, failed commands %.0f", csv_same, svg_same, bad_exit)};
}

struct Criterion
{
  const char * name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char ** argv)
{
  const std::vector<Criterion> criteria{
    {"graph_soundness", graph_soundness},
    {"beacon_cover", beacon_cover},
    {"attention_correctness", attention_correctness},
    {"gradient_check", gradient_check},
    {"loss_identities", loss_identities},
    {"triplet_property", triplet_property},
    {"oracle_optimality", oracle_optimality},
    {"navigation_success", navigation_success},
    {"training_smoke", training_smoke},
    {"determinism", determinism},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  bool all_pass = true;
  bool matched = false;
  for (const Criterion & c : criteria) {
    if (!only.empty() && only != c.name) {
      continue;
    }
    matched = true;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  if (!matched) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
