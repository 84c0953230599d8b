// bounds.hpp -- perfect-tree lower bounds and closed-form reference values

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mastermind {

/// Exact non-negative fraction, always reduced.
struct Fraction
{
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Fraction make(std::int64_t num, std::int64_t den);
    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    std::string to_string() const; // "num/den"

    friend bool operator==(const Fraction &, const Fraction &) = default;
};

/// Rounds num/den half-up to `digits` decimals without floating point.
std::string format_decimal(std::int64_t num, std::int64_t den, int digits = 3);

/// Leaf counts T[q] and correction terms S[q] of perfect trees where each
/// node finds one code and branches into (factor - 1) subtrees:
///   T[q+1] = 1 + (factor-1) T[q],  S[q+1] = (q+1) + (factor-1) S[q],
/// with T[0] = S[0] = 0. Sequences stop before T would exceed 2^62.
class BoundTables
{
public:
    BoundTables() = default;

    int grade_count() const noexcept { return grade_count_; }
    int depth_cap() const noexcept { return depth_cap_; }

    /// Sequences for one factor in [2, grade_count].
    const std::vector<std::int64_t> &leaves(int factor) const;
    const std::vector<std::int64_t> &correction(int factor) const;

    /// Largest M the tables can bound for this factor.
    std::int64_t capacity(int factor) const;

private:
    friend BoundTables build_tables(int grade_count, int depth_cap);

    int grade_count_ = 0;
    int depth_cap_ = 0;
    std::vector<std::vector<std::int64_t>> t_;
    std::vector<std::vector<std::int64_t>> s_;
};

inline constexpr int kDefaultDepthCap = 64;

/// Throws Error(invalid_argument) if grade_count < 2.
BoundTables build_tables(int grade_count, int depth_cap = kDefaultDepthCap);

/// External path length of the perfect tree holding `m` leaves: the q with
/// T[q] < m <= T[q+1] gives (q+1)m - S[q]. Throws Error(overflow) if m is
/// beyond the table capacity.
std::int64_t lower_bound(std::int64_t m, int factor, const BoundTables &tables);

/// Dense lookup of lower_bound(m, factor) for m in [0, max_m], every factor.
class LowerBoundCache
{
public:
    LowerBoundCache() = default;
    LowerBoundCache(int grade_count, std::int64_t max_m);

    std::int64_t operator()(std::size_t m, int factor) const noexcept
    {
        return values_[static_cast<std::size_t>(factor) * stride_ + m];
    }

    int grade_count() const noexcept { return grade_count_; }

private:
    int grade_count_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::int64_t> values_;
};

/// Known closed forms for E and W. Fields are empty where no formula applies.
struct ClosedForm
{
    std::optional<Fraction> expected;
    std::optional<int> worst;
    std::string note;
};

ClosedForm closed_form(int pegs, int colors);

} // namespace mastermind
