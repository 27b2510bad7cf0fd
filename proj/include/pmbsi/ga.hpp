#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "pmbsi/invariant.hpp"
#include "pmbsi/series.hpp"

namespace pmbsi {

struct ParamBounds {
    double ls_min = 2, ls_max = 50;
    double eta1_min = -0.96, eta1_max = 0.96;
    double eta2_min = -0.96, eta2_max = 0.96;
    double q_min = 0.01, q_max = 30.0;
};

struct GAConfig {
    int population_size = 20;
    int tournament_size = 5;
    double elite_fraction = 0.01; // at least one individual survives
    int stop_no_progress = 50;
    double mutation_rate_initial = 0.5;
    double mutation_probability = 1.0;
    ParamBounds bounds;
    std::uint64_t seed = 0;

    void validate(int lpr) const;
};

/// Chromosome: 4 genes in [0,1] encoding (ls, eta1, eta2, Q) via a linear
/// map onto the configured bounds.
struct Genotype {
    std::array<double, 4> genes{};
    double fitness = std::numeric_limits<double>::infinity();
    bool evaluated = false;
};

using Rng = std::mt19937_64;

/// Linear gene -> [min,max] decode; ls is rounded to the nearest integer and
/// clamped to >= lpr + 1.
StringParams decode(const Genotype& g, const GAConfig& config, int lpr);

/// Training-set MAE of the decoded model over every admissible tau0, with
/// the substitution policy applied. +inf when the segment admits no window
/// for this ls.
double evaluate_fitness(const Genotype& g, const TimeSeries& train, int lpr,
                        const GAConfig& config);

/// Two independent N-ary tournaments (sampling without replacement within a
/// tournament); returns indices of the winners.
std::pair<std::size_t, std::size_t> select_parents(const std::vector<Genotype>& population,
                                                   const GAConfig& config, Rng& rng);

/// Per-gene blend with independent alpha ~ U[0,1]; the offspring gene lies
/// in the interval spanned by the parents.
Genotype crossover(const Genotype& a, const Genotype& b, Rng& rng);

/// With probability mutation_probability adds mr * beta (beta ~ U[-1,1]) to
/// each gene, then clamps to [0,1].
Genotype mutate_and_repair(const Genotype& g, double mr, const GAConfig& config, Rng& rng);

struct GenerationStats {
    double best_fitness = 0;
    double mean_fitness = 0;
    double eval_mae = 0; // evaluation-segment MAE of the generation champion
    double mutation_rate = 0;
};

struct EvolutionTrace {
    std::vector<GenerationStats> generations;
    int generation_count = 0;
    double wall_time_s = 0;
};

struct EvolveResult {
    StringParams params;    // champion with the best evaluation-segment MAE
    double train_fitness = 0;
    double eval_mae = 0;
    EvolutionTrace trace;
};

/// Full generational loop: tournament selection, blend crossover, additive
/// mutation with a linearly decaying rate that resets at zero, bounds repair,
/// elitism, termination after stop_no_progress stagnant generations.
EvolveResult evolve(const TimeSeries& train, const TimeSeries& eval_segment, int lpr,
                    const GAConfig& config);

} // namespace pmbsi
