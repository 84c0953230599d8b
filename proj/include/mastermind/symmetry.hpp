// symmetry.hpp -- free/zero color tracking and guess case-equivalence

#pragma once

#include "mastermind/codes.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mastermind {

enum class ColorClass : std::uint8_t { free, used, zero };

/// Per-color classification along one branch of the game tree. Values are
/// small snapshots; descending a branch produces a new state.
///
/// Classes only move free -> used, free -> zero or used -> zero.
class ColorState
{
public:
    ColorState() = default;

    /// Every secret color free. In extended mode the extra guess color is
    /// known absent from the secret and starts as zero.
    static ColorState initial(const Params &params);

    int colors() const noexcept { return colors_; }
    ColorClass at(int color) const noexcept { return classes_[static_cast<std::size_t>(color)]; }
    bool is_free(int color) const noexcept { return at(color) == ColorClass::free; }
    bool is_zero(int color) const noexcept { return at(color) == ColorClass::zero; }

    /// No guess has been played yet on this branch.
    bool is_initial() const noexcept { return guesses_played_ == 0; }
    int guesses_played() const noexcept { return guesses_played_; }

    /// True while the remaining secret set is closed under permutation of
    /// positions: nothing played yet, or every answer so far was (0,0) or
    /// came from a single-color guess. Codes made only of free colors are
    /// then also equivalent under reordering of their pegs.
    bool positions_symmetric() const noexcept { return positions_symmetric_; }

    int zero_count() const noexcept;
    int free_count() const noexcept;

    /// Marks a color as absent from every remaining secret.
    void mark_zero(int color) noexcept;

    friend bool operator==(const ColorState &, const ColorState &) = default;

private:
    std::array<ColorClass, kMaxColors + 1> classes_{};
    int colors_ = 0;
    int pegs_ = 0;
    int guesses_played_ = 0;
    bool positions_symmetric_ = true;

    friend ColorState update_state(const ColorState &, const Code &, Grade);
};

/// State after `guess` received `answer`: the guess colors become used;
/// a (0,0) answer makes them zero; b + w = p makes every other color zero.
ColorState update_state(const ColorState &state, const Code &guess, Grade answer);

/// Canonical form of a code at a given state. Zero colors read as 'z', free
/// colors as letters in order of first appearance, used colors as
/// themselves. A code made only of free colors, while positions are still
/// interchangeable, reduces to its sorted color multiplicities.
struct Signature
{
    std::uint64_t key = 0;

    bool all_zero() const noexcept { return key == kAllZeroTag; }

    friend auto operator<=>(const Signature &, const Signature &) = default;

    static constexpr std::uint64_t kAllZeroTag = ~std::uint64_t{0};
};

Signature signature(const Code &code, const ColorState &state);

/// Printable token form, e.g. "1 2 a z" or "[3+1]" for a reduced free code.
std::string signature_text(const Code &code, const ColorState &state);

struct Representative
{
    Code code;
    std::size_t class_size = 0;
};

/// One entry per distinct signature: the first member in the given
/// (lexicographically sorted) sequence and the number of members. Classes
/// whose signature is all zero are dropped.
std::vector<Representative> representatives(std::span<const Code> guesses, const ColorState &state);

struct IndexedRepresentative
{
    GuessIndex guess = kNoGuess;
    std::uint32_t class_size = 0;
};

/// Peg order ignored: used colors by id, free colors by multiplicity, zero
/// pegs counted. Only meaningful while positions are interchangeable.
Signature position_free_signature(const Code &code, const ColorState &state);

/// Index-based form used inside the search loops. With `merge_positions`
/// every code, not only all-free ones, is merged under peg permutation
/// while the state allows it.
void representatives(const Game &game, std::span<const GuessIndex> guesses, const ColorState &state,
                     std::vector<IndexedRepresentative> &out, bool merge_positions = false);

} // namespace mastermind
