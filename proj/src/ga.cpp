#include "pmbsi/ga.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "pmbsi/evaluate.hpp"
#include "pmbsi/metrics.hpp"
#include "pmbsi/predictor.hpp"

namespace pmbsi {

void GAConfig::validate(int lpr) const {
    if (population_size < 2) throw NumericalError("population_size must be >= 2");
    if (tournament_size < 1 || tournament_size > population_size)
        throw NumericalError("tournament_size must be in [1, population_size]");
    if (stop_no_progress < 1) throw NumericalError("stop_no_progress must be >= 1");
    if (!(mutation_rate_initial >= 0.0 && mutation_rate_initial <= 1.0))
        throw NumericalError("mutation_rate_initial must be in [0,1]");
    if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0))
        throw NumericalError("mutation_probability must be in [0,1]");
    if (bounds.ls_max <= static_cast<double>(lpr))
        throw NumericalError("ls bound must exceed horizon");
    if (!(bounds.q_min > 0.0) || bounds.q_min > bounds.q_max)
        throw NumericalError("invalid Q bounds");
}

StringParams decode(const Genotype& g, const GAConfig& config, int lpr) {
    const ParamBounds& b = config.bounds;
    auto lin = [](double gene, double lo, double hi) { return lo + gene * (hi - lo); };
    StringParams p;
    p.lpr = lpr;
    const double ls_real = lin(g.genes[0], b.ls_min, b.ls_max);
    p.ls = std::max(static_cast<int>(std::lround(ls_real)), lpr + 1);
    p.eta1 = lin(g.genes[1], b.eta1_min, b.eta1_max);
    p.eta2 = lin(g.genes[2], b.eta2_min, b.eta2_max);
    p.q = lin(g.genes[3], b.q_min, b.q_max);
    return p;
}

double evaluate_fitness(const Genotype& g, const TimeSeries& train, int lpr,
                        const GAConfig& config) {
    const StringParams params = decode(g, config, lpr);
    const auto ls = static_cast<std::size_t>(params.ls);
    const auto h = static_cast<std::size_t>(lpr);
    const std::size_t n = train.size();
    if (n < (h + 1) + h + 1) // even the minimal ls = lpr + 1 does not fit
        throw NumericalError("training segment too short");
    if (n < ls + h + 1) // this ls admits no window; worst fitness
        return std::numeric_limits<double>::infinity();
    // admissible tau0: [ls, n - 1 - lpr], targets [ls + lpr, n)
    const RangeResult r = predict_range(train, params, ls, n - h);
    double sum = 0.0;
    for (std::size_t i = 0; i < r.forecasts.size(); ++i)
        sum += std::abs(train.at(ls + h + i) - *r.forecasts[i].value);
    return sum / static_cast<double>(r.forecasts.size());
}

std::pair<std::size_t, std::size_t> select_parents(const std::vector<Genotype>& population,
                                                   const GAConfig& config, Rng& rng) {
    const std::size_t n = population.size();
    const std::size_t t = static_cast<std::size_t>(config.tournament_size);
    auto tournament = [&]() {
        // partial Fisher-Yates: t distinct contestants
        std::vector<std::size_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::size_t best = n;
        for (std::size_t i = 0; i < t; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, n - 1);
            std::swap(idx[i], idx[pick(rng)]);
            if (best == n || population[idx[i]].fitness < population[best].fitness)
                best = idx[i];
        }
        return best;
    };
    const std::size_t a = tournament();
    const std::size_t b = tournament();
    return {a, b};
}

Genotype crossover(const Genotype& a, const Genotype& b, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Genotype o;
    for (std::size_t i = 0; i < o.genes.size(); ++i) {
        const double alpha = unit(rng);
        o.genes[i] = alpha * a.genes[i] + (1.0 - alpha) * b.genes[i];
    }
    return o;
}

Genotype mutate_and_repair(const Genotype& g, double mr, const GAConfig& config, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Genotype o = g;
    o.evaluated = false;
    const bool apply = unit(rng) < config.mutation_probability ||
                       config.mutation_probability >= 1.0;
    if (apply && mr > 0.0) {
        std::uniform_real_distribution<double> sym(-1.0, 1.0);
        for (double& gene : o.genes) gene += mr * sym(rng);
    }
    for (double& gene : o.genes) gene = std::clamp(gene, 0.0, 1.0);
    return o;
}

namespace {

constexpr double kProgressTolerance = 1e-12;

// Evaluation-segment MAE of one decoded model: targets are the eval segment
// indices of the train+eval concatenation, history reaches back into train.
double eval_segment_mae(const TimeSeries& train_eval, std::size_t eval_begin,
                        const StringParams& params) {
    const auto need = static_cast<std::size_t>(params.ls + params.lpr);
    if (eval_begin < need) return std::numeric_limits<double>::infinity();
    const SegmentEval se =
        forecast_targets_direct(train_eval, params, eval_begin, train_eval.size());
    return mae(se.actual, se.forecast);
}

} // namespace

EvolveResult evolve(const TimeSeries& train, const TimeSeries& eval_segment, int lpr,
                    const GAConfig& config) {
    config.validate(lpr);
    if (eval_segment.size() == 0) throw NumericalError("empty evaluation segment");
    const auto t_start = std::chrono::steady_clock::now();
    Rng rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    TimeSeries train_eval;
    train_eval.offset = train.offset;
    train_eval.values = train.values;
    train_eval.values.insert(train_eval.values.end(), eval_segment.values.begin(),
                             eval_segment.values.end());
    const std::size_t eval_begin = train.size();

    const auto pop_size = static_cast<std::size_t>(config.population_size);
    std::vector<Genotype> population(pop_size);
    for (Genotype& g : population) {
        for (double& gene : g.genes) gene = unit(rng);
        g.fitness = evaluate_fitness(g, train, lpr, config);
        g.evaluated = true;
    }

    auto best_of = [](const std::vector<Genotype>& pop) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pop.size(); ++i)
            if (pop[i].fitness < pop[best].fitness) best = i;
        return best;
    };

    EvolveResult result;
    EvolutionTrace& trace = result.trace;
    double best_eval_mae = std::numeric_limits<double>::infinity();
    double best_fitness_seen = std::numeric_limits<double>::infinity();

    auto record_generation = [&](double mr) {
        const std::size_t champ = best_of(population);
        const StringParams champ_params = decode(population[champ], config, lpr);
        double champ_eval = std::numeric_limits<double>::infinity();
        if (std::isfinite(population[champ].fitness))
            champ_eval = eval_segment_mae(train_eval, eval_begin, champ_params);
        double mean = 0.0;
        for (const Genotype& g : population) mean += g.fitness;
        mean /= static_cast<double>(pop_size);
        trace.generations.push_back(
            {population[champ].fitness, mean, champ_eval, mr});
        if (champ_eval < best_eval_mae) {
            best_eval_mae = champ_eval;
            result.params = champ_params;
            result.train_fitness = population[champ].fitness;
            result.eval_mae = champ_eval;
        }
        return population[champ].fitness;
    };

    double mr = config.mutation_rate_initial;
    best_fitness_seen = record_generation(mr);

    const std::size_t elite_count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(config.elite_fraction *
                                                static_cast<double>(pop_size))));
    const double mr_step =
        config.mutation_rate_initial / static_cast<double>(config.stop_no_progress);

    int no_progress = 0;
    while (no_progress < config.stop_no_progress) {
        std::vector<Genotype> next;
        next.reserve(pop_size);
        for (std::size_t i = 0; i < pop_size; ++i) {
            const auto [ia, ib] = select_parents(population, config, rng);
            Genotype child = crossover(population[ia], population[ib], rng);
            child = mutate_and_repair(child, mr, config, rng);
            child.fitness = evaluate_fitness(child, train, lpr, config);
            child.evaluated = true;
            next.push_back(std::move(child));
        }
        // elites of the current generation replace the weakest offspring
        std::vector<std::size_t> cur_order(pop_size), next_order(pop_size);
        std::iota(cur_order.begin(), cur_order.end(), 0);
        std::iota(next_order.begin(), next_order.end(), 0);
        std::stable_sort(cur_order.begin(), cur_order.end(), [&](auto a, auto b) {
            return population[a].fitness < population[b].fitness;
        });
        std::stable_sort(next_order.begin(), next_order.end(), [&](auto a, auto b) {
            return next[a].fitness > next[b].fitness;
        });
        for (std::size_t e = 0; e < elite_count; ++e)
            next[next_order[e]] = population[cur_order[e]];
        population = std::move(next);

        const double gen_best = record_generation(mr);
        if (best_fitness_seen - gen_best > kProgressTolerance) {
            best_fitness_seen = gen_best;
            no_progress = 0;
        } else {
            ++no_progress;
            mr -= mr_step;
            if (mr <= 0.0) mr = config.mutation_rate_initial;
        }
    }

    if (!std::isfinite(best_eval_mae))
        throw NumericalError("no admissible model found for the given segments");
    trace.generation_count = static_cast<int>(trace.generations.size());
    trace.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
}

} // namespace pmbsi
