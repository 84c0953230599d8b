// codes.hpp -- codes, grades, enumeration and the grading function

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mastermind {

/// Largest supported code length.
inline constexpr int kMaxPegs = 10;

/// Largest supported guess alphabet; symbols are 1-9 then a-z.
inline constexpr int kMaxColors = 35;

/// Rank of a code in the lexicographic enumeration of the secret alphabet.
using SecretIndex = std::uint32_t;

/// Rank of a code in the lexicographic enumeration of the guess alphabet.
using GuessIndex = std::uint32_t;

/// Dense grade index in [0, G_p).
using GradeIndex = std::uint8_t;

inline constexpr GuessIndex kNoGuess = static_cast<GuessIndex>(-1);
inline constexpr SecretIndex kNoSecret = static_cast<SecretIndex>(-1);

/// Game dimensions. In extended mode the guess alphabet carries one extra
/// color that never occurs in a secret.
struct Params
{
    int pegs = 0;
    int secret_colors = 0;
    int guess_colors = 0;

    static Params standard(int pegs, int colors);
    static Params extended(int pegs, int colors);

    bool is_extended() const noexcept { return guess_colors > secret_colors; }

    /// Throws Error(invalid_argument) when out of range.
    void validate() const;

    friend bool operator==(const Params &, const Params &) = default;
};

/// Which strategies are admissible: any guess, only codes still possible,
/// or any guess over an alphabet with one extra color absent from secrets.
enum class Mode { full, possible, extended };

std::string to_string(Mode mode);
Mode parse_mode(std::string_view text); // throws Error(parse)

/// Params for a mode: extended widens the guess alphabet by one color.
Params params_for(Mode mode, int pegs, int colors);

struct Counts
{
    std::uint64_t code_count = 0;
    std::uint64_t grade_count = 0;
};

/// Returns (c^p, p(p+3)/2). Throws Error(overflow) rather than wrapping.
Counts combinatorics(const Params &params);

/// colors^pegs with overflow detection.
std::uint64_t checked_power(std::uint64_t colors, int pegs);

/// A fixed-length sequence of 1-based colors. Ordering is lexicographic.
class Code
{
public:
    Code() = default;
    explicit Code(std::span<const int> pegs);
    Code(std::initializer_list<int> pegs);

    /// Parses a digit string ("1123", "1a2b"). Throws Error(parse).
    static Code parse(std::string_view text);

    int size() const noexcept { return size_; }
    int operator[](int i) const noexcept { return pegs_[static_cast<std::size_t>(i)]; }
    int distinct_colors() const noexcept;
    int max_color() const noexcept;
    std::string to_string() const;

    friend auto operator<=>(const Code &, const Code &) = default;

private:
    std::array<std::uint8_t, kMaxPegs> pegs_{};
    std::uint8_t size_ = 0;
};

char color_symbol(int color);
int color_from_symbol(char symbol); // 0 when not a color symbol

enum class Alphabet { secret, guess };

/// All codes over the chosen alphabet in strictly increasing order.
std::vector<Code> enumerate_codes(const Params &params, Alphabet alphabet);

/// Position of `code` in the lexicographic enumeration over `colors`.
std::uint64_t code_rank(const Code &code, int colors);
Code code_at_rank(std::uint64_t rank, int pegs, int colors);

struct Grade
{
    int black = 0;
    int white = 0;

    std::string to_string() const; // "b,w"
    static Grade parse(std::string_view text);

    friend auto operator<=>(const Grade &, const Grade &) = default;
};

/// Black = exact matches; white = common colors counted with multiplicity
/// minus black. Symmetric in its arguments.
Grade grade(const Code &a, const Code &b);

int grade_count(int pegs);
bool is_valid_grade(Grade g, int pegs) noexcept;

/// Bijection between valid grades and [0, G_p), ascending on (black, white).
/// The all-black grade is always the last index.
int grade_index(Grade g, int pegs);
Grade grade_decode(int index, int pegs);

struct ColorCensus
{
    /// class_count[i-1] = C_i, codes using exactly i distinct colors.
    std::vector<std::uint64_t> class_count;
    /// placement_count[i-1] = Z_pi, placements of i given colors on p pegs
    /// with every color used at least once.
    std::vector<std::uint64_t> placement_count;
};

ColorCensus color_census(const Params &params);

/// Default ceiling on grade table memory.
inline constexpr std::size_t kDefaultGradeTableBudget = std::size_t{512} << 20;

/// Pairwise grade indices, rows over the guess alphabet and columns over
/// the secret alphabet. A default-constructed table is disabled.
class GradeTable
{
public:
    GradeTable() = default;

    bool enabled() const noexcept { return !entries_.empty(); }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    GradeIndex at(GuessIndex g, SecretIndex s) const noexcept
    {
        return entries_[static_cast<std::size_t>(g) * cols_ + s];
    }

    std::span<const GradeIndex> row(GuessIndex g) const noexcept
    {
        return {entries_.data() + static_cast<std::size_t>(g) * cols_, cols_};
    }

private:
    friend GradeTable build_grade_table(const Params &, std::size_t);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GradeIndex> entries_;
};

/// Throws Error(memory_budget) when rows*cols exceeds `max_bytes`.
GradeTable build_grade_table(const Params &params,
                             std::size_t max_bytes = kDefaultGradeTableBudget);

struct GameOptions
{
    bool grade_table = true;
    std::size_t grade_table_budget = kDefaultGradeTableBudget;
};

/// Enumerated code spaces plus fast index-based grading. Immutable after
/// construction.
class Game
{
public:
    explicit Game(const Params &params, GameOptions options = {});

    const Params &params() const noexcept { return params_; }
    int pegs() const noexcept { return params_.pegs; }
    int grade_count() const noexcept { return grade_count_; }
    GradeIndex win_grade() const noexcept { return static_cast<GradeIndex>(grade_count_ - 1); }

    std::size_t guess_count() const noexcept { return guesses_.size(); }
    std::size_t secret_count() const noexcept { return guess_of_secret_.size(); }

    const Code &guess_code(GuessIndex g) const noexcept { return guesses_[g]; }
    const Code &secret_code(SecretIndex s) const noexcept { return guesses_[guess_of_secret_[s]]; }

    GuessIndex guess_of_secret(SecretIndex s) const noexcept { return guess_of_secret_[s]; }
    SecretIndex secret_of_guess(GuessIndex g) const noexcept { return secret_of_guess_[g]; }

    /// kNoGuess when the code is not over the guess alphabet.
    GuessIndex find_guess(const Code &code) const noexcept;
    SecretIndex find_secret(const Code &code) const noexcept;

    bool has_grade_table() const noexcept { return table_.enabled(); }

    GradeIndex grade(GuessIndex g, SecretIndex s) const noexcept
    {
        return table_.enabled() ? table_.at(g, s) : compute_grade(g, s);
    }

    /// Grades without consulting the table.
    GradeIndex compute_grade(GuessIndex g, SecretIndex s) const noexcept;

    Grade decode(GradeIndex ix) const noexcept { return decoded_[ix]; }
    GradeIndex encode(Grade g) const { return static_cast<GradeIndex>(grade_index(g, params_.pegs)); }

    /// Every secret index in increasing order.
    std::vector<SecretIndex> all_secrets() const;

private:
    Params params_;
    int grade_count_ = 0;
    std::vector<Code> guesses_;
    std::vector<GuessIndex> guess_of_secret_;
    std::vector<SecretIndex> secret_of_guess_;
    std::vector<std::uint8_t> pegs_;   // guess_count * pegs
    std::vector<std::uint8_t> counts_; // guess_count * stride_
    int stride_ = 0;
    std::vector<GradeIndex> lut_; // (black, white) -> index
    std::vector<Grade> decoded_;
    GradeTable table_;
};

} // namespace mastermind
