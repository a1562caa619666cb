#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "wirelay/mechanism.hpp"
#include "wirelay/rng.hpp"

namespace wirelay {

// Two minimization objectives; for wire arrangements these are
// (e_cross, -log_e_torque).
using ObjectivePair = std::array<double, 2>;

inline bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

struct Individual {
  Genome genome;
  ObjectivePair objectives{};
  int rank = 0;
  double crowding = 0.0;
};

struct GAConfig {
  std::size_t population_size = 50;
  std::size_t generations = 600;
  double crossover_prob = 0.9;
  double crossover_eta = 20.0;
  double mutation_prob = -1.0;  // negative means the 1/d default
  double mutation_eta = 20.0;
  std::uint64_t rng_seed = 1;

  void validate() const {
    if (population_size < 4 || population_size % 2 != 0)
      throw std::invalid_argument("ga: population_size must be even and >= 4");
    if (generations < 1) throw std::invalid_argument("ga: generations must be >= 1");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
      throw std::invalid_argument("ga: crossover_prob must be in [0,1]");
    if (mutation_prob >= 0.0 && mutation_prob > 1.0)
      throw std::invalid_argument("ga: mutation_prob must be in [0,1]");
    if (!(crossover_eta > 0.0) || !(mutation_eta > 0.0))
      throw std::invalid_argument("ga: distribution indices must be > 0");
  }
};

// ---------------------------------------------------------------------------
// Fast non-dominated sort and crowding distance
// ---------------------------------------------------------------------------

inline std::vector<std::vector<std::size_t>> non_dominated_sort(
    std::span<const ObjectivePair> objectives) {
  const std::size_t n = objectives.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<int> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts(1);

  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(objectives[p], objectives[q]))
        dominated[p].push_back(q);
      else if (dominates(objectives[q], objectives[p]))
        ++domination_count[p];
    }
    if (domination_count[p] == 0) fronts[0].push_back(p);
  }

  std::size_t current = 0;
  while (current < fronts.size() && !fronts[current].empty()) {
    std::vector<std::size_t> next;
    for (std::size_t p : fronts[current])
      for (std::size_t q : dominated[p])
        if (--domination_count[q] == 0) next.push_back(q);
    if (next.empty()) break;
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
    ++current;
  }
  return fronts;
}

// Crowding distances for one front, indexed like `front`. Boundary
// individuals per objective get +inf; a zero objective range contributes
// nothing.
inline std::vector<double> crowding_distance(std::span<const ObjectivePair> objectives,
                                             std::span<const std::size_t> front) {
  const std::size_t n = front.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(),
              std::numeric_limits<double>::infinity());
    return distance;
  }
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < 2; ++m) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return objectives[front[a]][m] < objectives[front[b]][m];
    });
    const double lo = objectives[front[order.front()]][m];
    const double hi = objectives[front[order.back()]][m];
    distance[order.front()] = std::numeric_limits<double>::infinity();
    distance[order.back()] = std::numeric_limits<double>::infinity();
    if (hi - lo <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i)
      distance[order[i]] += (objectives[front[order[i + 1]]][m] -
                             objectives[front[order[i - 1]]][m]) /
                            (hi - lo);
  }
  return distance;
}

// ---------------------------------------------------------------------------
// NSGA-II
// ---------------------------------------------------------------------------

struct ArchiveEntry {
  Genome genome;
  ObjectivePair objectives{};
};

struct SampleRecord {
  std::size_t trial = 0;
  ObjectivePair objectives{};
  Genome genome;
};

struct EvolveResult {
  std::vector<ArchiveEntry> archive;  // non-dominated over the whole history
  std::vector<SampleRecord> samples;  // every evaluation, in order
};

namespace detail {

inline void archive_insert(std::vector<ArchiveEntry>& archive, const Genome& genome,
                           const ObjectivePair& objectives) {
  for (const ArchiveEntry& entry : archive)
    if (dominates(entry.objectives, objectives) || entry.objectives == objectives)
      return;
  std::erase_if(archive, [&](const ArchiveEntry& entry) {
    return dominates(objectives, entry.objectives);
  });
  archive.push_back({genome, objectives});
}

inline void rank_population(std::vector<Individual>& population) {
  std::vector<ObjectivePair> objs(population.size());
  for (std::size_t i = 0; i < population.size(); ++i) objs[i] = population[i].objectives;
  const auto fronts = non_dominated_sort(objs);
  for (std::size_t f = 0; f < fronts.size(); ++f) {
    const auto dist = crowding_distance(objs, fronts[f]);
    for (std::size_t i = 0; i < fronts[f].size(); ++i) {
      population[fronts[f][i]].rank = static_cast<int>(f);
      population[fronts[f][i]].crowding = dist[i];
    }
  }
}

inline const Individual& tournament(const std::vector<Individual>& population, Rng& rng) {
  const Individual& a = population[rng.below(population.size())];
  const Individual& b = population[rng.below(population.size())];
  if (a.rank != b.rank) return a.rank < b.rank ? a : b;
  if (a.crowding != b.crowding) return a.crowding > b.crowding ? a : b;
  return a;
}

inline void sbx_crossover(Genome& c1, Genome& c2, double eta, Rng& rng) {
  for (std::size_t i = 0; i < c1.size(); ++i) {
    if (rng.uniform() > 0.5) continue;
    if (std::abs(c1[i] - c2[i]) < 1e-14) continue;
    const double u = rng.uniform();
    const double beta = u <= 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0))
                                 : std::pow(1.0 / (2.0 * (1.0 - u)), 1.0 / (eta + 1.0));
    const double p1 = c1[i], p2 = c2[i];
    c1[i] = std::clamp(0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2), -1.0, 1.0);
    c2[i] = std::clamp(0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2), -1.0, 1.0);
  }
}

inline void polynomial_mutation(Genome& genome, double prob, double eta, Rng& rng) {
  for (double& x : genome) {
    if (rng.uniform() > prob) continue;
    const double u = rng.uniform();
    const double delta = u < 0.5 ? std::pow(2.0 * u, 1.0 / (eta + 1.0)) - 1.0
                                 : 1.0 - std::pow(2.0 * (1.0 - u), 1.0 / (eta + 1.0));
    x = std::clamp(x + 2.0 * delta, -1.0, 1.0);
  }
}

}  // namespace detail

// Evolves box-bounded genomes in [-1, 1]^d against a two-objective
// minimization callback. Evaluations run in deterministic index order;
// selection is binary tournament on (rank, crowding); survival is elitist
// (mu + lambda). Total evaluations = population_size * generations (the
// initial population counts as the first generation).
template <typename Evaluate>
EvolveResult evolve(Evaluate&& evaluate_genome, std::size_t genome_length,
                    const GAConfig& config) {
  config.validate();
  if (genome_length == 0) throw std::invalid_argument("evolve: genome_length must be > 0");

  Rng rng(config.rng_seed);
  const double mutation_prob = config.mutation_prob >= 0.0
                                   ? config.mutation_prob
                                   : 1.0 / static_cast<double>(genome_length);

  EvolveResult result;
  std::size_t trial = 0;
  auto evaluate_into = [&](std::vector<Individual>& group) {
    for (Individual& ind : group) {
      ind.objectives = evaluate_genome(ind.genome);
      result.samples.push_back({trial++, ind.objectives, ind.genome});
      detail::archive_insert(result.archive, ind.genome, ind.objectives);
    }
  };

  std::vector<Individual> population(config.population_size);
  for (Individual& ind : population) {
    ind.genome.resize(genome_length);
    for (double& x : ind.genome) x = rng.uniform(-1.0, 1.0);
  }
  evaluate_into(population);

  for (std::size_t gen = 1; gen < config.generations; ++gen) {
    detail::rank_population(population);

    std::vector<Individual> offspring;
    offspring.reserve(config.population_size);
    for (std::size_t pair = 0; pair < config.population_size / 2; ++pair) {
      Individual c1, c2;
      c1.genome = detail::tournament(population, rng).genome;
      c2.genome = detail::tournament(population, rng).genome;
      if (rng.uniform() <= config.crossover_prob)
        detail::sbx_crossover(c1.genome, c2.genome, config.crossover_eta, rng);
      detail::polynomial_mutation(c1.genome, mutation_prob, config.mutation_eta, rng);
      detail::polynomial_mutation(c2.genome, mutation_prob, config.mutation_eta, rng);
      offspring.push_back(std::move(c1));
      offspring.push_back(std::move(c2));
    }
    evaluate_into(offspring);

    // (mu + lambda) environmental selection
    std::vector<Individual> combined;
    combined.reserve(population.size() + offspring.size());
    for (Individual& ind : population) combined.push_back(std::move(ind));
    for (Individual& ind : offspring) combined.push_back(std::move(ind));

    std::vector<ObjectivePair> objs(combined.size());
    for (std::size_t i = 0; i < combined.size(); ++i) objs[i] = combined[i].objectives;
    const auto fronts = non_dominated_sort(objs);

    std::vector<Individual> next;
    next.reserve(config.population_size);
    for (const std::vector<std::size_t>& front : fronts) {
      if (next.size() == config.population_size) break;
      if (next.size() + front.size() <= config.population_size) {
        for (std::size_t idx : front) next.push_back(std::move(combined[idx]));
        continue;
      }
      const auto dist = crowding_distance(objs, front);
      std::vector<std::size_t> order(front.size());
      for (std::size_t i = 0; i < front.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return dist[a] > dist[b]; });
      for (std::size_t i = 0; next.size() < config.population_size; ++i)
        next.push_back(std::move(combined[front[order[i]]]));
      break;
    }
    population = std::move(next);
  }
  return result;
}

}  // namespace wirelay
