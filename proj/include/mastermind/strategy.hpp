// strategy.hpp -- strategy trees, replay verification and file formats

#pragma once

#include "mastermind/bounds.hpp"
#include "mastermind/codes.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mastermind {

/// L, N, W and the histogram f (found_at[i-1] = codes found at guess i).
struct PathStats
{
    std::int64_t total = 0;
    std::int64_t secrets = 0;
    int worst = 0;
    std::vector<std::int64_t> found_at;

    void record(int guesses, std::int64_t count = 1);
    void merge(const PathStats &other);
    Fraction expected() const { return Fraction::make(total, secrets == 0 ? 1 : secrets); }

    /// "(1/4/3)"
    std::string histogram_text() const;

    friend bool operator==(const PathStats &, const PathStats &) = default;
};

/// A guess node. `via` is the answer on the edge from the parent (unused at
/// the root). The all-black answer is implicit and never stored as a child.
struct StrategyNode
{
    Grade via;
    Code guess;
    std::vector<StrategyNode> children; // sorted by via

    const StrategyNode *child(Grade g) const noexcept;
    StrategyNode &add_child(Grade g, Code guess);
    std::size_t node_count() const noexcept;

    friend bool operator==(const StrategyNode &, const StrategyNode &) = default;
};

struct StrategyTree
{
    static constexpr int kFormatVersion = 1;

    int pegs = 0;
    int colors = 0;
    Mode mode = Mode::full;
    std::optional<std::int64_t> claimed_total;
    std::optional<int> claimed_worst;
    StrategyNode root;

    Params params() const { return params_for(mode, pegs, colors); }

    friend bool operator==(const StrategyTree &, const StrategyTree &) = default;
};

struct TreeStats
{
    PathStats paths;
    std::int64_t secrets_covered = 0;
    std::vector<std::string> warnings;
};

/// Replays every secret through the tree with the plain grading function.
/// Throws Error(verify) when a secret falls off a missing branch, a path
/// exceeds the depth cap, or the header claims a worst case below the
/// information-theoretic minimum. Other header mismatches become warnings.
TreeStats verify(const StrategyTree &tree);
TreeStats verify(const StrategyTree &tree, const Params &params);

/// Smallest depth d whose perfect tree at full branching holds n codes.
int minimum_worst_case(std::int64_t n, int pegs);

std::string to_json(const StrategyTree &tree);
StrategyTree tree_from_json(std::string_view text); // throws Error(parse)

/// Graphviz rendering: one node per guess, one labeled edge per answer,
/// winning answers drawn to point nodes.
std::string to_dot(const StrategyTree &tree);

void save_text(const std::string &path, const std::string &text); // throws Error(io)
std::string load_text(const std::string &path);

} // namespace mastermind
