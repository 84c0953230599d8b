#include "mastermind/mastermind.h"

#include "mastermind/bounds.hpp"
#include "mastermind/error.hpp"
#include "mastermind/heuristics.hpp"
#include "mastermind/solver.hpp"
#include "mastermind/strategy.hpp"

#include <cstring>
#include <iostream>
#include <new>
#include <string>

using namespace mastermind;

struct mm_solve_config
{
    SolveConfig config;
    bool verbose = false;
};

struct mm_result
{
    PathStats stats;
    Code first_guess;
    std::optional<StrategyTree> tree;
    std::uint64_t nodes = 0;
    std::vector<std::string> warnings;
};

struct mm_tree
{
    StrategyTree tree;
};

namespace {

thread_local std::string last_error;

mm_status to_status(ErrorCode code)
{
    switch (code) {
    case ErrorCode::invalid_argument:
        return MM_INVALID_ARGUMENT;
    case ErrorCode::overflow:
        return MM_OVERFLOW;
    case ErrorCode::memory_budget:
        return MM_MEMORY_BUDGET;
    case ErrorCode::infeasible:
        return MM_INFEASIBLE;
    case ErrorCode::bound_too_low:
        return MM_BOUND_TOO_LOW;
    case ErrorCode::parse:
        return MM_PARSE;
    case ErrorCode::verify:
        return MM_VERIFY;
    case ErrorCode::io:
        return MM_IO;
    case ErrorCode::internal:
        return MM_INTERNAL;
    }
    return MM_INTERNAL;
}

template <class F>
mm_status guarded(F &&body)
{
    try {
        last_error.clear();
        body();
        return MM_OK;
    } catch (const Error &e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc &) {
        last_error = "out of memory";
        return MM_MEMORY_BUDGET;
    } catch (const std::exception &e) {
        last_error = e.what();
        return MM_INTERNAL;
    }
}

void require(bool ok, const char *what)
{
    if (!ok)
        fail(ErrorCode::invalid_argument, what);
}

char *copy_string(const std::string &s)
{
    char *out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

Mode to_mode(mm_mode m)
{
    switch (m) {
    case MM_MODE_FULL:
        return Mode::full;
    case MM_MODE_POSSIBLE:
        return Mode::possible;
    case MM_MODE_EXTENDED:
        return Mode::extended;
    }
    fail(ErrorCode::invalid_argument, "unknown mode value");
}

mm_mode from_mode(Mode m)
{
    return m == Mode::possible ? MM_MODE_POSSIBLE : m == Mode::extended ? MM_MODE_EXTENDED : MM_MODE_FULL;
}

mm_status set_flag(mm_solve_config *config, bool SolveConfig::*field, int enabled)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        config->config.*field = enabled != 0;
    });
}

std::optional<Code> optional_code(const char *text)
{
    if (text == nullptr || *text == '\0')
        return std::nullopt;
    return Code::parse(text);
}

mm_result *from_rollout(RolloutResult &&r, bool want_tree)
{
    auto *out = new mm_result;
    out->stats = r.stats;
    out->first_guess = r.first_guess;
    if (want_tree)
        out->tree = std::move(r.tree);
    return out;
}

} // namespace

extern "C" {

const char *mm_last_error(void)
{
    return last_error.c_str();
}

const char *mm_status_name(mm_status status)
{
    switch (status) {
    case MM_OK:
        return "ok";
    case MM_INVALID_ARGUMENT:
        return "invalid argument";
    case MM_OVERFLOW:
        return "overflow";
    case MM_MEMORY_BUDGET:
        return "memory budget exceeded";
    case MM_INFEASIBLE:
        return "infeasible";
    case MM_BOUND_TOO_LOW:
        return "upper bound too low";
    case MM_PARSE:
        return "parse error";
    case MM_VERIFY:
        return "verification failed";
    case MM_IO:
        return "i/o error";
    case MM_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *mm_version(void)
{
    return "1.0.0";
}

void mm_string_free(char *text)
{
    delete[] text;
}

mm_status mm_parse_mode(const char *text, mm_mode *out)
{
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = from_mode(parse_mode(text));
    });
}

mm_status mm_parse_policy(const char *text, mm_policy *out)
{
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = static_cast<mm_policy>(parse_policy(text));
    });
}

mm_status mm_solve_config_create(mm_solve_config **out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new mm_solve_config;
    });
}

void mm_solve_config_destroy(mm_solve_config *config)
{
    delete config;
}

mm_status mm_solve_config_set_mode(mm_solve_config *config, mm_mode mode)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        config->config.mode = to_mode(mode);
    });
}

mm_status mm_solve_config_set_upper_bound(mm_solve_config *config, int64_t bound)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        if (bound > 0)
            config->config.initial_upper_bound = bound;
        else
            config->config.initial_upper_bound.reset();
    });
}

mm_status mm_solve_config_set_symmetry(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::symmetry, enabled);
}

mm_status mm_solve_config_set_shortcuts(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::shortcuts, enabled);
}

mm_status mm_solve_config_set_grade_table(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::grade_table, enabled);
}

mm_status mm_solve_config_set_k_factor(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::k_factor, enabled);
}

mm_status mm_solve_config_set_deterministic(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::deterministic, enabled);
}

mm_status mm_solve_config_set_want_tree(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::want_tree, enabled);
}

mm_status mm_solve_config_set_minimize_worst(mm_solve_config *config, int enabled)
{
    return set_flag(config, &SolveConfig::minimize_worst, enabled);
}

mm_status mm_solve_config_set_workers(mm_solve_config *config, int workers)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        require(workers >= 1, "workers must be positive");
        config->config.workers = workers;
    });
}

mm_status mm_solve_config_set_cache_path(mm_solve_config *config, const char *path)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        config->config.cache_path = path != nullptr ? path : "";
    });
}

mm_status mm_resolve_cache_path(const char *flag_value, char **out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = copy_string(resolve_cache_path(flag_value != nullptr ? flag_value : ""));
    });
}

mm_status mm_solve_config_set_max_guesses(mm_solve_config *config, int max_guesses)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        require(max_guesses >= 0, "max guesses must not be negative");
        if (max_guesses == 0)
            config->config.max_guesses.reset();
        else
            config->config.max_guesses = max_guesses;
    });
}

mm_status mm_solve_config_set_verbose(mm_solve_config *config, int enabled)
{
    return guarded([&] {
        require(config != nullptr, "config is null");
        config->verbose = enabled != 0;
    });
}

mm_status mm_solve(int pegs, int colors, const mm_solve_config *config, mm_result **out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        SolveConfig cfg = config != nullptr ? config->config : SolveConfig{};
        if (config != nullptr && config->verbose)
            cfg.trace = &std::cerr;
        SolveOutcome r = solve(pegs, colors, cfg);
        auto *res = new mm_result;
        res->stats = r.stats;
        res->first_guess = r.first_guess;
        res->tree = std::move(r.tree);
        res->nodes = r.counters.nodes;
        res->warnings = std::move(r.warnings);
        *out = res;
    });
}

mm_status mm_heuristic(int pegs, int colors, mm_policy policy, mm_tie_order tie, mm_entropy_ties ties,
                       const char *first_guess, int want_tree, mm_result **out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        require(policy >= MM_POLICY_MAX_SIZE && policy <= MM_POLICY_MOST_PARTS, "unknown policy value");
        const Params params = Params::standard(pegs, colors);
        params.validate();
        // the table is an optimization; skip it rather than fail when it won't fit
        const std::uint64_t n = combinatorics(params).code_count;
        const bool table = n * n * sizeof(GradeIndex) <= kDefaultGradeTableBudget;
        Game game(params, GameOptions{table});
        RolloutOptions options;
        options.tie = tie == MM_TIE_LAST ? TieOrder::last : TieOrder::first;
        options.entropy_ties = ties == MM_ENTROPY_STRICT ? EntropyTies::strict : EntropyTies::tolerant;
        options.first_guess = optional_code(first_guess);
        options.build_tree = want_tree != 0;
        *out = from_rollout(rollout(game, static_cast<Policy>(policy), options), want_tree != 0);
    });
}

mm_status mm_consistency(int pegs, int colors, const char *first_guess, int want_tree, mm_result **out)
{
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        const Params params = Params::standard(pegs, colors);
        params.validate();
        // replay touches few grade pairs; the table would cost more than it saves
        Game game(params, GameOptions{false});
        *out = from_rollout(consistency_rollout(game, optional_code(first_guess), want_tree != 0), want_tree != 0);
    });
}

void mm_result_destroy(mm_result *result)
{
    delete result;
}

int64_t mm_result_total(const mm_result *result)
{
    return result != nullptr ? result->stats.total : 0;
}

int64_t mm_result_secrets(const mm_result *result)
{
    return result != nullptr ? result->stats.secrets : 0;
}

int mm_result_worst(const mm_result *result)
{
    return result != nullptr ? result->stats.worst : 0;
}

size_t mm_result_histogram(const mm_result *result, int64_t *out, size_t cap)
{
    if (result == nullptr)
        return 0;
    const auto &f = result->stats.found_at;
    for (size_t i = 0; i < f.size() && i < cap && out != nullptr; ++i)
        out[i] = f[i];
    return f.size();
}

mm_status mm_result_first_guess(const mm_result *result, char **out)
{
    return guarded([&] {
        require(result != nullptr && out != nullptr, "null argument");
        *out = copy_string(result->first_guess.to_string());
    });
}

uint64_t mm_result_nodes(const mm_result *result)
{
    return result != nullptr ? result->nodes : 0;
}

size_t mm_result_warning_count(const mm_result *result)
{
    return result != nullptr ? result->warnings.size() : 0;
}

const char *mm_result_warning(const mm_result *result, size_t index)
{
    if (result == nullptr || index >= result->warnings.size())
        return nullptr;
    return result->warnings[index].c_str();
}

mm_status mm_result_take_tree(mm_result *result, mm_tree **out)
{
    return guarded([&] {
        require(result != nullptr && out != nullptr, "null argument");
        require(result->tree.has_value(), "result carries no strategy tree");
        *out = new mm_tree{std::move(*result->tree)};
        result->tree.reset();
    });
}

void mm_tree_destroy(mm_tree *tree)
{
    delete tree;
}

mm_status mm_tree_from_json(const char *text, mm_tree **out)
{
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        *out = new mm_tree{tree_from_json(text)};
    });
}

mm_status mm_tree_load(const char *path, mm_tree **out)
{
    return guarded([&] {
        require(path != nullptr && out != nullptr, "null argument");
        *out = new mm_tree{tree_from_json(load_text(path))};
    });
}

mm_status mm_tree_export(const mm_tree *tree, mm_format format, char **out)
{
    return guarded([&] {
        require(tree != nullptr && out != nullptr, "null argument");
        *out = copy_string(format == MM_FORMAT_DOT ? to_dot(tree->tree) : to_json(tree->tree));
    });
}

mm_status mm_tree_save(const mm_tree *tree, const char *path, mm_format format)
{
    return guarded([&] {
        require(tree != nullptr && path != nullptr, "null argument");
        save_text(path, format == MM_FORMAT_DOT ? to_dot(tree->tree) : to_json(tree->tree));
    });
}

int mm_tree_pegs(const mm_tree *tree)
{
    return tree != nullptr ? tree->tree.pegs : 0;
}

int mm_tree_colors(const mm_tree *tree)
{
    return tree != nullptr ? tree->tree.colors : 0;
}

mm_mode mm_tree_mode(const mm_tree *tree)
{
    return tree != nullptr ? from_mode(tree->tree.mode) : MM_MODE_FULL;
}

size_t mm_tree_node_count(const mm_tree *tree)
{
    return tree != nullptr ? tree->tree.root.node_count() : 0;
}

mm_status mm_tree_verify(const mm_tree *tree, mm_result **out)
{
    return guarded([&] {
        require(tree != nullptr && out != nullptr, "null argument");
        *out = nullptr;
        TreeStats stats = verify(tree->tree);
        auto *res = new mm_result;
        res->stats = stats.paths;
        res->first_guess = tree->tree.root.guess;
        res->warnings = std::move(stats.warnings);
        *out = res;
    });
}

mm_status mm_grade(const char *a, const char *b, int *black, int *white)
{
    return guarded([&] {
        require(a != nullptr && b != nullptr && black != nullptr && white != nullptr, "null argument");
        const Code x = Code::parse(a);
        const Code y = Code::parse(b);
        require(x.size() == y.size(), "codes differ in length");
        const Grade g = grade(x, y);
        *black = g.black;
        *white = g.white;
    });
}

mm_status mm_combinatorics(int pegs, int colors, uint64_t *codes, uint64_t *grades)
{
    return guarded([&] {
        require(codes != nullptr && grades != nullptr, "null argument");
        const Counts c = combinatorics(Params::standard(pegs, colors));
        *codes = c.code_count;
        *grades = c.grade_count;
    });
}

mm_status mm_color_census(int pegs, int colors, uint64_t *class_counts, uint64_t *placements, size_t cap,
                          size_t *count)
{
    return guarded([&] {
        require(count != nullptr, "null argument");
        const ColorCensus census = color_census(Params::standard(pegs, colors));
        *count = census.class_count.size();
        for (size_t i = 0; i < census.class_count.size() && i < cap; ++i) {
            if (class_counts != nullptr)
                class_counts[i] = census.class_count[i];
            if (placements != nullptr)
                placements[i] = census.placement_count[i];
        }
    });
}

mm_status mm_lower_bound(int64_t m, int factor, int grade_count, int64_t *out)
{
    return guarded([&] {
        require(out != nullptr, "null argument");
        require(m >= 1, "m must be positive");
        require(factor >= 2 && factor <= grade_count, "factor must lie in [2, grade_count]");
        *out = lower_bound(m, factor, build_tables(grade_count));
    });
}

mm_status mm_closed_form(int pegs, int colors, int *has_expected, int64_t *num, int64_t *den, int *has_worst,
                         int *worst)
{
    return guarded([&] {
        require(has_expected != nullptr && num != nullptr && den != nullptr && has_worst != nullptr &&
                    worst != nullptr,
                "null argument");
        require(pegs >= 1 && colors >= 1, "pegs and colors must be positive");
        const ClosedForm cf = closed_form(pegs, colors);
        *has_expected = cf.expected.has_value();
        *num = cf.expected ? cf.expected->num : 0;
        *den = cf.expected ? cf.expected->den : 1;
        *has_worst = cf.worst.has_value();
        *worst = cf.worst.value_or(0);
    });
}

mm_status mm_format_decimal(int64_t num, int64_t den, int digits, char **out)
{
    return guarded([&] {
        require(out != nullptr, "null argument");
        require(den > 0 && num >= 0, "fraction must be non-negative with a positive denominator");
        require(digits >= 0 && digits <= 18, "digits out of range");
        *out = copy_string(format_decimal(num, den, digits));
    });
}

} // extern "C"
