#include "mastermind/bounds.hpp"

#include "mastermind/error.hpp"

#include <algorithm>
#include <numeric>

namespace mastermind {

Fraction Fraction::make(std::int64_t num, std::int64_t den)
{
    if (den <= 0)
        fail(ErrorCode::invalid_argument, "fraction denominator must be positive");
    auto g = std::gcd(num, den);
    if (g == 0)
        g = 1;
    return {num / g, den / g};
}

std::string Fraction::to_string() const
{
    return std::to_string(num) + "/" + std::to_string(den);
}

std::string format_decimal(std::int64_t num, std::int64_t den, int digits)
{
    std::int64_t scale = 1;
    for (int i = 0; i < digits; ++i)
        scale *= 10;
    // floor((2 * num * scale + den) / (2 * den)) == round half up
    const auto scaled = (2 * static_cast<__int128>(num) * scale + den) / (2 * static_cast<__int128>(den));
    const auto whole = static_cast<std::int64_t>(scaled / scale);
    const auto frac = static_cast<std::int64_t>(scaled % scale);
    std::string f = std::to_string(frac);
    if (digits == 0)
        return std::to_string(whole);
    return std::to_string(whole) + "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
}

// ---------------------------------------------------------------------------

const std::vector<std::int64_t> &BoundTables::leaves(int factor) const
{
    if (factor < 2 || factor > grade_count_)
        fail(ErrorCode::invalid_argument, "branching factor out of range");
    return t_[static_cast<std::size_t>(factor)];
}

const std::vector<std::int64_t> &BoundTables::correction(int factor) const
{
    if (factor < 2 || factor > grade_count_)
        fail(ErrorCode::invalid_argument, "branching factor out of range");
    return s_[static_cast<std::size_t>(factor)];
}

std::int64_t BoundTables::capacity(int factor) const
{
    return leaves(factor).back();
}

BoundTables build_tables(int grade_count, int depth_cap)
{
    if (grade_count < 2)
        fail(ErrorCode::invalid_argument, "bound tables need at least 2 grades");
    if (depth_cap < 1)
        fail(ErrorCode::invalid_argument, "depth cap must be positive");
    constexpr std::int64_t kLimit = std::int64_t{1} << 62;

    BoundTables tables;
    tables.grade_count_ = grade_count;
    tables.depth_cap_ = depth_cap;
    tables.t_.resize(static_cast<std::size_t>(grade_count + 1));
    tables.s_.resize(static_cast<std::size_t>(grade_count + 1));
    for (int factor = 2; factor <= grade_count; ++factor) {
        auto &t = tables.t_[static_cast<std::size_t>(factor)];
        auto &s = tables.s_[static_cast<std::size_t>(factor)];
        const std::int64_t branch = factor - 1;
        t.push_back(0);
        s.push_back(0);
        for (int q = 0; q < depth_cap; ++q) {
            const auto tq = t.back();
            const auto sq = s.back();
            if (tq > (kLimit - 1) / branch || sq > (kLimit - (q + 1)) / branch)
                break;
            t.push_back(1 + branch * tq);
            s.push_back((q + 1) + branch * sq);
        }
    }
    return tables;
}

std::int64_t lower_bound(std::int64_t m, int factor, const BoundTables &tables)
{
    if (m < 1)
        fail(ErrorCode::invalid_argument, "lower bound needs at least one code");
    const auto &t = tables.leaves(factor);
    const auto &s = tables.correction(factor);
    if (m > t.back())
        fail(ErrorCode::overflow, "set size " + std::to_string(m) +
                                      " exceeds the bound tables; raise the depth cap");
    // first index with t[q + 1] >= m
    auto it = std::lower_bound(t.begin() + 1, t.end(), m);
    const auto q = static_cast<std::size_t>(it - t.begin()) - 1;
    return static_cast<std::int64_t>(q + 1) * m - s[q];
}

LowerBoundCache::LowerBoundCache(int grade_count, std::int64_t max_m)
    : grade_count_(grade_count), stride_(static_cast<std::size_t>(max_m) + 1)
{
    const int cap = static_cast<int>(std::max<std::int64_t>(kDefaultDepthCap, max_m + 1));
    const auto tables = build_tables(grade_count, cap);
    values_.assign(stride_ * static_cast<std::size_t>(grade_count + 1), 0);
    for (int factor = 2; factor <= grade_count; ++factor)
        for (std::int64_t m = 1; m <= max_m; ++m)
            values_[static_cast<std::size_t>(factor) * stride_ + static_cast<std::size_t>(m)] =
                lower_bound(m, factor, tables);
}

// ---------------------------------------------------------------------------

ClosedForm closed_form(int pegs, int colors)
{
    if (pegs < 1 || colors < 1)
        fail(ErrorCode::invalid_argument, "pegs and colors must be positive");
    ClosedForm cf;
    if (colors == 1) {
        cf.expected = Fraction::make(1, 1);
        cf.worst = 1;
        cf.note = "single code";
        return cf;
    }
    if (pegs == 1) {
        cf.expected = Fraction::make(colors + 1, 2);
        cf.worst = colors;
        cf.note = "one peg: colors are tried in turn";
        return cf;
    }
    if (pegs == 2) {
        const std::int64_t n = colors;
        if (n == 2)
            cf.expected = Fraction::make(2, 1);
        else if (n % 2 == 0)
            cf.expected = Fraction::make(8 * n * n * n + 51 * n * n - 74 * n + 48, 24 * n * n);
        else
            cf.expected = Fraction::make(8 * n * n * n + 51 * n * n - 80 * n + 69, 24 * n * n);
        cf.worst = colors / 2 + 2;
        cf.note = "two pegs: solved in general";
        return cf;
    }
    if (pegs == 3) {
        static constexpr int kSmall[] = {0, 0, 3, 4, 4};
        cf.worst = colors <= 4 ? kSmall[colors] : (colors - 1) / 3 + 4;
        cf.note = "three pegs: worst case only";
        return cf;
    }
    cf.note = "no closed form";
    return cf;
}

} // namespace mastermind
