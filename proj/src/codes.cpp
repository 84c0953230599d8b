#include "mastermind/codes.hpp"

#include "mastermind/error.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace mastermind {

namespace {

constexpr std::string_view kSymbols = "123456789abcdefghijklmnopqrstuvwxyz";

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i after the multiply
        unsigned __int128 t = static_cast<unsigned __int128>(r) * (n - k + i);
        t /= i;
        if (t > UINT64_MAX)
            fail(ErrorCode::overflow, "binomial coefficient overflows 64 bits");
        r = static_cast<std::uint64_t>(t);
    }
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        fail(ErrorCode::overflow, "integer overflow in code counting");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r))
        fail(ErrorCode::overflow, "integer overflow in code counting");
    return r;
}

} // namespace

Params Params::standard(int pegs, int colors)
{
    Params p{pegs, colors, colors};
    p.validate();
    return p;
}

Params Params::extended(int pegs, int colors)
{
    Params p{pegs, colors, colors + 1};
    p.validate();
    return p;
}

void Params::validate() const
{
    if (pegs < 1 || pegs > kMaxPegs)
        fail(ErrorCode::invalid_argument,
             "pegs must be in [1, " + std::to_string(kMaxPegs) + "], got " + std::to_string(pegs));
    if (secret_colors < 1)
        fail(ErrorCode::invalid_argument, "colors must be positive, got " + std::to_string(secret_colors));
    if (guess_colors != secret_colors && guess_colors != secret_colors + 1)
        fail(ErrorCode::invalid_argument, "guess alphabet must have c or c+1 colors");
    if (guess_colors > kMaxColors)
        fail(ErrorCode::invalid_argument,
             "at most " + std::to_string(kMaxColors) + " guess colors are supported");
}

std::string to_string(Mode mode)
{
    switch (mode) {
    case Mode::full:
        return "full";
    case Mode::possible:
        return "possible";
    case Mode::extended:
        return "extended";
    }
    return "?";
}

Mode parse_mode(std::string_view text)
{
    if (text == "full")
        return Mode::full;
    if (text == "possible")
        return Mode::possible;
    if (text == "extended")
        return Mode::extended;
    fail(ErrorCode::parse, "unknown mode '" + std::string(text) + "'");
}

Params params_for(Mode mode, int pegs, int colors)
{
    return mode == Mode::extended ? Params::extended(pegs, colors) : Params::standard(pegs, colors);
}

std::uint64_t checked_power(std::uint64_t colors, int pegs)
{
    std::uint64_t r = 1;
    for (int i = 0; i < pegs; ++i)
        r = checked_mul(r, colors);
    return r;
}

Counts combinatorics(const Params &params)
{
    params.validate();
    return {checked_power(static_cast<std::uint64_t>(params.secret_colors), params.pegs),
            static_cast<std::uint64_t>(grade_count(params.pegs))};
}

// ---------------------------------------------------------------------------
// Code

Code::Code(std::span<const int> pegs)
{
    if (pegs.empty() || pegs.size() > static_cast<std::size_t>(kMaxPegs))
        fail(ErrorCode::invalid_argument, "code length out of range");
    for (std::size_t i = 0; i < pegs.size(); ++i) {
        if (pegs[i] < 1 || pegs[i] > kMaxColors)
            fail(ErrorCode::invalid_argument, "color out of range in code");
        pegs_[i] = static_cast<std::uint8_t>(pegs[i]);
    }
    size_ = static_cast<std::uint8_t>(pegs.size());
}

Code::Code(std::initializer_list<int> pegs)
    : Code(std::span<const int>(pegs.begin(), pegs.size()))
{
}

Code Code::parse(std::string_view text)
{
    if (text.empty() || text.size() > static_cast<std::size_t>(kMaxPegs))
        fail(ErrorCode::parse, "invalid code length: '" + std::string(text) + "'");
    std::vector<int> pegs;
    for (char ch : text) {
        int color = color_from_symbol(ch);
        if (color == 0)
            fail(ErrorCode::parse, "invalid color symbol '" + std::string(1, ch) + "' in code '" +
                                       std::string(text) + "'");
        pegs.push_back(color);
    }
    return Code(pegs);
}

int Code::distinct_colors() const noexcept
{
    std::uint64_t seen = 0;
    for (int i = 0; i < size_; ++i)
        seen |= std::uint64_t{1} << pegs_[static_cast<std::size_t>(i)];
    return std::popcount(seen);
}

int Code::max_color() const noexcept
{
    int m = 0;
    for (int i = 0; i < size_; ++i)
        m = std::max(m, static_cast<int>(pegs_[static_cast<std::size_t>(i)]));
    return m;
}

std::string Code::to_string() const
{
    std::string s;
    for (int i = 0; i < size_; ++i)
        s.push_back(color_symbol(pegs_[static_cast<std::size_t>(i)]));
    return s;
}

char color_symbol(int color)
{
    if (color < 1 || color > kMaxColors)
        return '?';
    return kSymbols[static_cast<std::size_t>(color - 1)];
}

int color_from_symbol(char symbol)
{
    auto pos = kSymbols.find(symbol);
    return pos == std::string_view::npos ? 0 : static_cast<int>(pos) + 1;
}

std::vector<Code> enumerate_codes(const Params &params, Alphabet alphabet)
{
    params.validate();
    const int colors = alphabet == Alphabet::secret ? params.secret_colors : params.guess_colors;
    const std::uint64_t n = checked_power(static_cast<std::uint64_t>(colors), params.pegs);
    std::vector<Code> codes;
    codes.reserve(n);
    std::vector<int> pegs(static_cast<std::size_t>(params.pegs), 1);
    for (std::uint64_t k = 0; k < n; ++k) {
        codes.emplace_back(pegs);
        for (int i = params.pegs - 1; i >= 0; --i) {
            auto &peg = pegs[static_cast<std::size_t>(i)];
            if (++peg <= colors)
                break;
            peg = 1;
        }
    }
    return codes;
}

std::uint64_t code_rank(const Code &code, int colors)
{
    std::uint64_t r = 0;
    for (int i = 0; i < code.size(); ++i)
        r = r * static_cast<std::uint64_t>(colors) + static_cast<std::uint64_t>(code[i] - 1);
    return r;
}

Code code_at_rank(std::uint64_t rank, int pegs, int colors)
{
    std::vector<int> p(static_cast<std::size_t>(pegs));
    for (int i = pegs - 1; i >= 0; --i) {
        p[static_cast<std::size_t>(i)] = static_cast<int>(rank % static_cast<std::uint64_t>(colors)) + 1;
        rank /= static_cast<std::uint64_t>(colors);
    }
    return Code(p);
}

// ---------------------------------------------------------------------------
// Grades

std::string Grade::to_string() const
{
    return std::to_string(black) + "," + std::to_string(white);
}

Grade Grade::parse(std::string_view text)
{
    auto comma = text.find(',');
    Grade g;
    auto bad = [&] { fail(ErrorCode::parse, "invalid grade '" + std::string(text) + "'"); };
    if (comma == std::string_view::npos)
        bad();
    auto b = text.substr(0, comma);
    auto w = text.substr(comma + 1);
    auto r1 = std::from_chars(b.data(), b.data() + b.size(), g.black);
    auto r2 = std::from_chars(w.data(), w.data() + w.size(), g.white);
    if (r1.ec != std::errc{} || r1.ptr != b.data() + b.size() || r2.ec != std::errc{} ||
        r2.ptr != w.data() + w.size())
        bad();
    return g;
}

Grade grade(const Code &a, const Code &b)
{
    if (a.size() != b.size())
        fail(ErrorCode::invalid_argument, "grading codes of different lengths");
    std::array<int, kMaxColors + 1> ca{}, cb{};
    int black = 0;
    for (int i = 0; i < a.size(); ++i) {
        if (a[i] == b[i])
            ++black;
        ++ca[static_cast<std::size_t>(a[i])];
        ++cb[static_cast<std::size_t>(b[i])];
    }
    int common = 0;
    for (std::size_t c = 1; c < ca.size(); ++c)
        common += std::min(ca[c], cb[c]);
    return {black, common - black};
}

int grade_count(int pegs)
{
    return pegs * (pegs + 3) / 2;
}

bool is_valid_grade(Grade g, int pegs) noexcept
{
    if (g.black < 0 || g.white < 0 || g.black + g.white > pegs)
        return false;
    return !(g.black == pegs - 1 && g.white == 1);
}

namespace {

// Indices of grades with black < b.
int grade_offset(int b, int pegs)
{
    if (b <= pegs - 1)
        return b * (pegs + 1) - b * (b - 1) / 2;
    return grade_offset(pegs - 1, pegs) + 1;
}

} // namespace

int grade_index(Grade g, int pegs)
{
    if (!is_valid_grade(g, pegs))
        fail(ErrorCode::invalid_argument,
             "invalid grade (" + g.to_string() + ") for " + std::to_string(pegs) + " pegs");
    return grade_offset(g.black, pegs) + g.white;
}

Grade grade_decode(int index, int pegs)
{
    if (index < 0 || index >= grade_count(pegs))
        fail(ErrorCode::invalid_argument, "grade index out of range");
    int b = 0;
    while (b < pegs && grade_offset(b + 1, pegs) <= index)
        ++b;
    return {b, index - grade_offset(b, pegs)};
}

ColorCensus color_census(const Params &params)
{
    params.validate();
    const int p = params.pegs;
    const int c = params.secret_colors;
    const int top = std::min(p, c);

    // Composition recurrence: z[n][i] = sum_k binom(n, k) z[n - k][i - 1].
    std::vector<std::vector<std::uint64_t>> z(static_cast<std::size_t>(p + 1),
                                              std::vector<std::uint64_t>(static_cast<std::size_t>(top + 1), 0));
    z[0][0] = 1;
    for (int i = 1; i <= top; ++i)
        for (int n = i; n <= p; ++n) {
            std::uint64_t sum = 0;
            for (int k = 1; k <= n - (i - 1); ++k)
                sum = checked_add(sum, checked_mul(binomial(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)),
                                                   z[static_cast<std::size_t>(n - k)][static_cast<std::size_t>(i - 1)]));
            z[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = sum;
        }

    ColorCensus census;
    for (int i = 1; i <= top; ++i) {
        auto zi = z[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)];
        census.placement_count.push_back(zi);
        census.class_count.push_back(checked_mul(binomial(static_cast<std::uint64_t>(c), static_cast<std::uint64_t>(i)), zi));
    }
    return census;
}

// ---------------------------------------------------------------------------
// Grade table and Game

GradeTable build_grade_table(const Params &params, std::size_t max_bytes)
{
    params.validate();
    const auto rows = checked_power(static_cast<std::uint64_t>(params.guess_colors), params.pegs);
    const auto cols = checked_power(static_cast<std::uint64_t>(params.secret_colors), params.pegs);
    std::uint64_t bytes = 0;
    if (__builtin_mul_overflow(rows, cols, &bytes) || bytes > max_bytes)
        fail(ErrorCode::memory_budget,
             "grade table needs " + std::to_string(rows) + "x" + std::to_string(cols) +
                 " entries, above the memory budget; disable it (--no-grade-table)");

    Game game(params, GameOptions{false, 0});
    GradeTable t;
    t.rows_ = rows;
    t.cols_ = cols;
    t.entries_.resize(bytes);
    for (std::size_t g = 0; g < rows; ++g)
        for (std::size_t s = 0; s < cols; ++s)
            t.entries_[g * cols + s] = game.compute_grade(static_cast<GuessIndex>(g), static_cast<SecretIndex>(s));
    return t;
}

Game::Game(const Params &params, GameOptions options) : params_(params)
{
    params_.validate();
    grade_count_ = mastermind::grade_count(params_.pegs);
    guesses_ = enumerate_codes(params_, Alphabet::guess);

    const int p = params_.pegs;
    stride_ = params_.guess_colors + 1;
    pegs_.resize(guesses_.size() * static_cast<std::size_t>(p));
    counts_.assign(guesses_.size() * static_cast<std::size_t>(stride_), 0);
    secret_of_guess_.assign(guesses_.size(), kNoSecret);
    for (std::size_t g = 0; g < guesses_.size(); ++g) {
        const Code &code = guesses_[g];
        for (int i = 0; i < p; ++i) {
            pegs_[g * static_cast<std::size_t>(p) + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(code[i]);
            ++counts_[g * static_cast<std::size_t>(stride_) + static_cast<std::size_t>(code[i])];
        }
        if (code.max_color() <= params_.secret_colors) {
            secret_of_guess_[g] = static_cast<SecretIndex>(guess_of_secret_.size());
            guess_of_secret_.push_back(static_cast<GuessIndex>(g));
        }
    }

    lut_.assign(static_cast<std::size_t>((p + 1) * (p + 1)), 0xff);
    decoded_.resize(static_cast<std::size_t>(grade_count_));
    for (int ix = 0; ix < grade_count_; ++ix) {
        Grade g = grade_decode(ix, p);
        decoded_[static_cast<std::size_t>(ix)] = g;
        lut_[static_cast<std::size_t>(g.black * (p + 1) + g.white)] = static_cast<GradeIndex>(ix);
    }

    if (options.grade_table)
        table_ = build_grade_table(params_, options.grade_table_budget);
}

GradeIndex Game::compute_grade(GuessIndex g, SecretIndex s) const noexcept
{
    const std::size_t p = static_cast<std::size_t>(params_.pegs);
    const std::size_t gs = guess_of_secret_[s];
    const std::uint8_t *a = pegs_.data() + static_cast<std::size_t>(g) * p;
    const std::uint8_t *b = pegs_.data() + gs * p;
    int black = 0;
    for (std::size_t i = 0; i < p; ++i)
        black += a[i] == b[i];
    const std::uint8_t *ca = counts_.data() + static_cast<std::size_t>(g) * static_cast<std::size_t>(stride_);
    const std::uint8_t *cb = counts_.data() + gs * static_cast<std::size_t>(stride_);
    int common = 0;
    for (int c = 1; c < stride_; ++c)
        common += std::min(ca[c], cb[c]);
    return lut_[static_cast<std::size_t>(black * (params_.pegs + 1) + common - black)];
}

GuessIndex Game::find_guess(const Code &code) const noexcept
{
    if (code.size() != params_.pegs || code.max_color() > params_.guess_colors)
        return kNoGuess;
    return static_cast<GuessIndex>(code_rank(code, params_.guess_colors));
}

SecretIndex Game::find_secret(const Code &code) const noexcept
{
    if (code.size() != params_.pegs || code.max_color() > params_.secret_colors)
        return kNoSecret;
    return static_cast<SecretIndex>(code_rank(code, params_.secret_colors));
}

std::vector<SecretIndex> Game::all_secrets() const
{
    std::vector<SecretIndex> v(secret_count());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = static_cast<SecretIndex>(i);
    return v;
}

} // namespace mastermind
