// heuristics.hpp -- one-step-ahead guess policies and full-strategy rollouts

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/strategy.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mastermind {

enum class Policy { max_size, expected_size, entropy, most_parts };
enum class TieOrder { first, last };

std::string to_string(Policy policy);
Policy parse_policy(std::string_view text); // "max-size", "expected-size", "entropy", "most-parts"
TieOrder parse_tie_order(std::string_view text);

/// Candidates split by their grade against one guess. parts[i] holds the
/// candidates graded i; empty grades keep an empty vector.
struct Partition
{
    Code source_guess;
    std::vector<std::vector<SecretIndex>> parts;

    std::size_t part_count() const noexcept;
    std::vector<std::int64_t> sizes() const;
};

Partition partition_by_guess(const Game &game, std::span<const SecretIndex> candidates, GuessIndex guess);

/// Policy value of a partition. max_size and expected_size (sum of squared
/// part sizes) are minimized exactly; entropy (bits) and most_parts are
/// maximized.
struct Score
{
    std::int64_t exact = 0;
    double entropy = 0.0;
};

/// `sizes` lists part sizes (zeros allowed). `win_part` is the size of the
/// all-black part; it is dropped from most_parts when `count_win_part` is
/// false.
Score score(std::span<const std::int64_t> sizes, Policy policy, std::int64_t n, std::int64_t win_part = 0,
            bool count_win_part = true);
Score score(const Partition &partition, Policy policy, std::int64_t n);

/// Relative tolerance under which two entropies tie.
inline constexpr double kEntropyTieTolerance = 1e-9;

/// How entropies are compared. `tolerant` declares a tie within
/// kEntropyTieTolerance, so mathematically equal entropies always tie.
/// `strict` compares the raw doubles (summed over grades from the winning
/// answer down), which breaks some exact ties by rounding noise; this is the
/// arithmetic behind the historical 5723 (MM(4,6)) and 11382 (MM(4,7)).
enum class EntropyTies { tolerant, strict };

std::string to_string(EntropyTies ties);
EntropyTies parse_entropy_ties(std::string_view text);

/// +1 when `a` is strictly better than `b`, 0 on a tie, -1 otherwise.
int compare(Policy policy, const Score &a, const Score &b, EntropyTies ties = EntropyTies::tolerant) noexcept;

/// Best guess by `policy`. Ties go to guesses that are candidates, then to
/// the first (or last) in lexicographic order. `guesses` must be sorted.
GuessIndex select_guess(const Game &game, std::span<const SecretIndex> candidates,
                        std::span<const GuessIndex> guesses, Policy policy, TieOrder tie = TieOrder::first,
                        EntropyTies ties = EntropyTies::tolerant);

struct RolloutOptions
{
    TieOrder tie = TieOrder::first;
    EntropyTies entropy_ties = EntropyTies::tolerant;
    std::optional<Code> first_guess;
    /// Restrict every guess to the current candidates.
    bool possible_only = false;
    /// Score one member per signature class instead of every guess.
    bool use_symmetry = true;
    bool build_tree = true;
    /// most_parts counts the all-black part as a part.
    bool count_win_part = true;
    int workers = 1;
};

struct RolloutResult
{
    PathStats stats;
    Code first_guess;
    std::optional<StrategyTree> tree;
};

RolloutResult rollout(const Game &game, Policy policy, const RolloutOptions &options = {});

/// Plays, for each secret, the smallest code consistent with every answer
/// so far. Without `first_guess` the first code (1...1) opens.
RolloutResult consistency_rollout(const Game &game, std::optional<Code> first_guess = std::nullopt,
                                  bool build_tree = true, int workers = 1);

} // namespace mastermind
