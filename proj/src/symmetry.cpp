#include "mastermind/symmetry.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

namespace mastermind {

ColorState ColorState::initial(const Params &params)
{
    ColorState s;
    s.colors_ = params.guess_colors;
    s.pegs_ = params.pegs;
    for (int c = 1; c <= params.guess_colors; ++c)
        s.classes_[static_cast<std::size_t>(c)] = c > params.secret_colors ? ColorClass::zero : ColorClass::free;
    return s;
}

int ColorState::zero_count() const noexcept
{
    int n = 0;
    for (int c = 1; c <= colors_; ++c)
        n += is_zero(c);
    return n;
}

int ColorState::free_count() const noexcept
{
    int n = 0;
    for (int c = 1; c <= colors_; ++c)
        n += is_free(c);
    return n;
}

void ColorState::mark_zero(int color) noexcept
{
    classes_[static_cast<std::size_t>(color)] = ColorClass::zero;
}

ColorState update_state(const ColorState &state, const Code &guess, Grade answer)
{
    ColorState next = state;
    std::array<bool, kMaxColors + 1> in_guess{};
    for (int i = 0; i < guess.size(); ++i)
        in_guess[static_cast<std::size_t>(guess[i])] = true;

    for (int c = 1; c <= next.colors_; ++c) {
        auto &cls = next.classes_[static_cast<std::size_t>(c)];
        if (in_guess[static_cast<std::size_t>(c)] && cls == ColorClass::free)
            cls = ColorClass::used;
    }
    if (answer.black == 0 && answer.white == 0) {
        for (int c = 1; c <= next.colors_; ++c)
            if (in_guess[static_cast<std::size_t>(c)])
                next.classes_[static_cast<std::size_t>(c)] = ColorClass::zero;
    }
    if (answer.black + answer.white == guess.size()) {
        for (int c = 1; c <= next.colors_; ++c)
            if (!in_guess[static_cast<std::size_t>(c)])
                next.classes_[static_cast<std::size_t>(c)] = ColorClass::zero;
    }

    const bool monochrome = guess.distinct_colors() == 1;
    const bool blank = answer.black == 0 && answer.white == 0;
    next.positions_symmetric_ = state.positions_symmetric_ && (monochrome || blank);
    ++next.guesses_played_;
    return next;
}

namespace {

constexpr std::uint64_t kZeroToken = 63;
constexpr std::uint64_t kFreeBase = 36;
constexpr std::uint64_t kReducedTag = std::uint64_t{1} << 63;
constexpr std::uint64_t kPositionFreeTag = std::uint64_t{1} << 62;

bool exclusively_free(const Code &code, const ColorState &state)
{
    for (int i = 0; i < code.size(); ++i)
        if (!state.is_free(code[i]))
            return false;
    return true;
}

std::array<int, kMaxPegs> sorted_multiplicities(const Code &code, int &distinct)
{
    std::array<int, kMaxColors + 1> count{};
    for (int i = 0; i < code.size(); ++i)
        ++count[static_cast<std::size_t>(code[i])];
    std::array<int, kMaxPegs> mult{};
    distinct = 0;
    for (int c : count)
        if (c > 0)
            mult[static_cast<std::size_t>(distinct++)] = c;
    std::sort(mult.begin(), mult.begin() + distinct, std::greater<>());
    return mult;
}

} // namespace

Signature signature(const Code &code, const ColorState &state)
{
    if (state.positions_symmetric() && exclusively_free(code, state)) {
        int distinct = 0;
        auto mult = sorted_multiplicities(code, distinct);
        std::uint64_t key = kReducedTag;
        for (int i = 0; i < distinct; ++i)
            key |= static_cast<std::uint64_t>(mult[static_cast<std::size_t>(i)]) << (4 * i);
        return {key};
    }

    std::array<std::uint8_t, kMaxColors + 1> letter{};
    std::uint64_t next_letter = 0;
    std::uint64_t key = 0;
    bool all_zero = true;
    for (int i = 0; i < code.size(); ++i) {
        const int c = code[i];
        std::uint64_t token = 0;
        switch (state.at(c)) {
        case ColorClass::zero:
            token = kZeroToken;
            break;
        case ColorClass::free: {
            auto &l = letter[static_cast<std::size_t>(c)];
            if (l == 0)
                l = static_cast<std::uint8_t>(++next_letter);
            token = kFreeBase + l - 1;
            all_zero = false;
            break;
        }
        case ColorClass::used:
            token = static_cast<std::uint64_t>(c);
            all_zero = false;
            break;
        }
        key |= token << (6 * i);
    }
    if (all_zero)
        return {Signature::kAllZeroTag};
    return {key};
}

std::string signature_text(const Code &code, const ColorState &state)
{
    if (state.positions_symmetric() && exclusively_free(code, state)) {
        int distinct = 0;
        auto mult = sorted_multiplicities(code, distinct);
        std::string s = "[";
        for (int i = 0; i < distinct; ++i) {
            if (i > 0)
                s += "+";
            s += std::to_string(mult[static_cast<std::size_t>(i)]);
        }
        return s + "]";
    }
    std::array<char, kMaxColors + 1> letter{};
    char next_letter = 'a';
    std::string s;
    for (int i = 0; i < code.size(); ++i) {
        if (i > 0)
            s += ' ';
        const int c = code[i];
        switch (state.at(c)) {
        case ColorClass::zero:
            s += 'z';
            break;
        case ColorClass::free: {
            auto &l = letter[static_cast<std::size_t>(c)];
            if (l == 0)
                l = next_letter++;
            s += l;
            break;
        }
        case ColorClass::used:
            s += color_symbol(c);
            break;
        }
    }
    return s;
}

std::vector<Representative> representatives(std::span<const Code> guesses, const ColorState &state)
{
    std::vector<Representative> out;
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (const Code &g : guesses) {
        const auto sig = signature(g, state);
        if (sig.all_zero())
            continue;
        auto [it, inserted] = slot.try_emplace(sig.key, out.size());
        if (inserted)
            out.push_back({g, 0});
        ++out[it->second].class_size;
    }
    return out;
}

Signature position_free_signature(const Code &code, const ColorState &state)
{
    std::array<int, kMaxColors + 1> count{};
    for (int i = 0; i < code.size(); ++i)
        ++count[static_cast<std::size_t>(code[i])];
    std::array<int, kMaxPegs> free_mult{};
    int free_distinct = 0;
    int zeros = 0;
    std::uint64_t key = 0;
    int at = 0;
    auto put = [&](std::uint64_t token) { key |= token << (6 * at++); };
    for (int c = 1; c <= state.colors(); ++c) {
        const int n = count[static_cast<std::size_t>(c)];
        if (n == 0)
            continue;
        switch (state.at(c)) {
        case ColorClass::zero:
            zeros += n;
            break;
        case ColorClass::free:
            free_mult[static_cast<std::size_t>(free_distinct++)] = n;
            break;
        case ColorClass::used:
            for (int k = 0; k < n; ++k)
                put(static_cast<std::uint64_t>(c));
            break;
        }
    }
    if (zeros == code.size())
        return {Signature::kAllZeroTag};
    std::sort(free_mult.begin(), free_mult.begin() + free_distinct, std::greater<>());
    for (int l = 0; l < free_distinct; ++l)
        for (int k = 0; k < free_mult[static_cast<std::size_t>(l)]; ++k)
            put(kFreeBase + static_cast<std::uint64_t>(l));
    for (int k = 0; k < zeros; ++k)
        put(kZeroToken);
    return {key | kPositionFreeTag};
}

void representatives(const Game &game, std::span<const GuessIndex> guesses, const ColorState &state,
                     std::vector<IndexedRepresentative> &out, bool merge_positions)
{
    out.clear();
    std::unordered_map<std::uint64_t, std::uint32_t> slot;
    slot.reserve(guesses.size());
    const bool reduce = merge_positions && state.positions_symmetric();
    for (GuessIndex g : guesses) {
        const Code &code = game.guess_code(g);
        const auto sig = reduce ? position_free_signature(code, state) : signature(code, state);
        if (sig.all_zero())
            continue;
        auto [it, inserted] = slot.try_emplace(sig.key, static_cast<std::uint32_t>(out.size()));
        if (inserted)
            out.push_back({g, 0});
        ++out[it->second].class_size;
    }
}

} // namespace mastermind
