// solver.hpp -- exact expected-case search by depth-first branch and bound

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/strategy.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

namespace mastermind {

struct PruneEvent
{
    std::vector<SecretIndex> candidates;
    GuessIndex guess = kNoGuess;
    std::int64_t budget = 0;
    std::int64_t predicted = 0;
    /// Guesses still allowed at this node, counting `guess`.
    int guesses_left = 0;
};

struct SolveConfig
{
    Mode mode = Mode::full;
    /// A known achievable L. The search then looks for L <= bound only.
    std::optional<std::int64_t> initial_upper_bound;
    bool symmetry = true;
    bool shortcuts = true;
    bool grade_table = true;
    std::size_t grade_table_budget = kDefaultGradeTableBudget;
    bool k_factor = true;
    bool transposition_cache = true;
    int workers = 1;
    /// Report the optimal strategy with the lexicographically smallest first
    /// guess regardless of scheduling.
    bool deterministic = false;
    /// Result cache file; empty disables it.
    std::string cache_path;
    std::optional<int> max_guesses;
    bool want_tree = false;
    /// Among optimal strategies under the chosen first guess, report one
    /// with the fewest guesses in the worst case.
    bool minimize_worst = true;
    /// Progress trace in the style of the classic solver output.
    std::ostream *trace = nullptr;
    /// Called whenever a guess is abandoned because its predicted total
    /// reached the budget. Diagnostic only; runs on the searching thread.
    std::function<void(const PruneEvent &)> on_prune;
};

struct SearchCounters
{
    std::uint64_t nodes = 0;
    std::uint64_t guesses = 0;
    std::uint64_t pruned = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t shortcuts = 0;

    void merge(const SearchCounters &o);
};

struct SolveOutcome
{
    Params params;
    Mode mode = Mode::full;
    PathStats stats;
    Code first_guess;
    std::optional<StrategyTree> tree;
    SearchCounters counters;
    /// Exclusive budget the final search started from.
    std::int64_t start_budget = 0;
    std::vector<std::string> warnings;
};

/// Optimal values keyed by (mode, pegs, colors), persisted as a small
/// versioned text file.
class ResultCache
{
public:
    static constexpr int kFormatVersion = 1;

    /// Missing file yields an empty cache. Malformed lines are skipped and
    /// reported through `warnings`.
    static ResultCache load(const std::string &path, std::vector<std::string> *warnings = nullptr);
    void save(const std::string &path) const;

    std::optional<std::int64_t> get(Mode mode, int pegs, int colors) const;
    void put(Mode mode, int pegs, int colors, std::int64_t total);
    std::size_t size() const noexcept { return entries_.size(); }

private:
    std::map<std::tuple<int, int, int>, std::int64_t> entries_;
};

/// Flag value if set, else $MASTERMIND_CACHE, else empty.
std::string resolve_cache_path(const std::string &flag_value);

enum class DiscriminatorKind { none, internal, external };

struct Discriminator
{
    DiscriminatorKind kind = DiscriminatorKind::none;
    GuessIndex guess = kNoGuess;
};

/// A guess splitting `candidates` into singletons. Candidates are tried
/// first, then (unless `candidates_only`) every guess in lexicographic order.
Discriminator find_discriminator(const Game &game, std::span<const SecretIndex> candidates,
                                 bool candidates_only = false);

/// Cost of the (0,0) branch after a first guess using `used_colors` colors,
/// counted from the first guess: MM*(p, c-k) + (c-k)^p. Only possible-mode
/// values apply; empty on a cache miss.
std::optional<std::int64_t> zero_answer_shortcut(const ResultCache &cache, int pegs, int colors,
                                                 int used_colors);

/// Throws Error(infeasible) when max_guesses admits no strategy and
/// Error(bound_too_low) when no strategy reaches initial_upper_bound.
SolveOutcome solve(int pegs, int colors, const SolveConfig &config = {});

/// Exact optimal cost of an arbitrary candidate set (every secret counted
/// from the next guess), using the same search. Guesses range over the
/// mode's alphabet; the state is the initial one.
std::int64_t solve_subset(const Game &game, Mode mode, std::span<const SecretIndex> candidates,
                          const SolveConfig &config = {});

} // namespace mastermind
