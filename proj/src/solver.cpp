#include "mastermind/solver.hpp"

#include "mastermind/bounds.hpp"
#include "mastermind/error.hpp"
#include "mastermind/heuristics.hpp"
#include "mastermind/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace mastermind {

void SearchCounters::merge(const SearchCounters &o)
{
    nodes += o.nodes;
    guesses += o.guesses;
    pruned += o.pruned;
    cache_hits += o.cache_hits;
    shortcuts += o.shortcuts;
}

// ---------------------------------------------------------------------------
// Result cache

ResultCache ResultCache::load(const std::string &path, std::vector<std::string> *warnings)
{
    ResultCache cache;
    std::ifstream in(path);
    if (!in)
        return cache;
    auto warn = [&](const std::string &msg) {
        if (warnings != nullptr)
            warnings->push_back("cache " + path + ": " + msg);
    };
    std::string line;
    int line_no = 0;
    bool versioned = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#')
            continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (!versioned) {
            int version = 0;
            if (head != "format_version" || !(fields >> version) || version != kFormatVersion) {
                warn("unsupported or missing format_version, ignoring the file");
                return cache;
            }
            versioned = true;
            continue;
        }
        int p = 0;
        int c = 0;
        std::int64_t total = 0;
        std::string rest;
        Mode mode{};
        try {
            mode = parse_mode(head);
        } catch (const Error &) {
            warn("line " + std::to_string(line_no) + ": unknown mode '" + head + "', skipped");
            continue;
        }
        if (!(fields >> p >> c >> total) || (fields >> rest) || p < 1 || c < 1 || total < 1) {
            warn("line " + std::to_string(line_no) + ": malformed entry, skipped");
            continue;
        }
        cache.entries_[{static_cast<int>(mode), p, c}] = total;
    }
    return cache;
}

void ResultCache::save(const std::string &path) const
{
    std::ostringstream out;
    out << "# optimal total path lengths: mode pegs colors L\n";
    out << "format_version " << kFormatVersion << "\n";
    for (const auto &[key, total] : entries_)
        out << to_string(static_cast<Mode>(std::get<0>(key))) << ' ' << std::get<1>(key) << ' '
            << std::get<2>(key) << ' ' << total << "\n";
    save_text(path, out.str());
}

std::optional<std::int64_t> ResultCache::get(Mode mode, int pegs, int colors) const
{
    auto it = entries_.find({static_cast<int>(mode), pegs, colors});
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void ResultCache::put(Mode mode, int pegs, int colors, std::int64_t total)
{
    entries_[{static_cast<int>(mode), pegs, colors}] = total;
}

std::string resolve_cache_path(const std::string &flag_value)
{
    if (!flag_value.empty())
        return flag_value;
    if (const char *env = std::getenv("MASTERMIND_CACHE"))
        return env;
    return {};
}

// ---------------------------------------------------------------------------
// Shortcuts

namespace {

bool separates(const Game &game, GuessIndex g, std::span<const SecretIndex> set, std::vector<std::uint8_t> &seen)
{
    std::fill(seen.begin(), seen.end(), 0);
    for (SecretIndex s : set) {
        auto &slot = seen[game.grade(g, s)];
        if (slot)
            return false;
        slot = 1;
    }
    return true;
}

} // namespace

Discriminator find_discriminator(const Game &game, std::span<const SecretIndex> candidates, bool candidates_only)
{
    if (candidates.size() <= 1 || candidates.size() > static_cast<std::size_t>(game.grade_count()))
        return {};
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(game.grade_count()));
    for (SecretIndex s : candidates)
        if (separates(game, game.guess_of_secret(s), candidates, seen))
            return {DiscriminatorKind::internal, game.guess_of_secret(s)};
    if (candidates_only || candidates.size() >= static_cast<std::size_t>(game.grade_count()))
        return {};
    for (GuessIndex g = 0; g < game.guess_count(); ++g)
        if (separates(game, g, candidates, seen))
            return {DiscriminatorKind::external, g};
    return {};
}

std::optional<std::int64_t> zero_answer_shortcut(const ResultCache &cache, int pegs, int colors, int used_colors)
{
    const int rest = colors - used_colors;
    if (rest < 1)
        return std::nullopt;
    auto v = cache.get(Mode::possible, pegs, rest);
    if (!v)
        return std::nullopt;
    return *v + static_cast<std::int64_t>(checked_power(static_cast<std::uint64_t>(rest), pegs));
}

// ---------------------------------------------------------------------------
// Search

namespace {

constexpr std::int64_t kInf = std::int64_t{1} << 50;
constexpr int kUnlimited = 1 << 20;
constexpr int kQuietDepth = 1 << 10;
constexpr std::size_t kMinCachedSet = 4;
constexpr std::size_t kMaxCacheEntries = std::size_t{1} << 22;

struct SetHash
{
    std::size_t operator()(const std::vector<SecretIndex> &v) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
        for (SecretIndex x : v) {
            h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

struct CacheEntry
{
    std::int64_t value = 0;
    bool exact = false;
    GuessIndex guess = kNoGuess;
};

struct Choice
{
    GuessIndex guess = kNoGuess;
    std::int64_t estimate = 0;
    int parts = 0;
    bool candidate = false;
};

std::string grade_tag(Grade g)
{
    return std::to_string(g.black * 10 + g.white);
}

/// Shared, read-only inputs of one search.
struct SearchContext
{
    const Game &game;
    const SolveConfig &config;
    Mode mode;
    const LowerBoundCache &bounds;
    const BoundTables &tables;
    /// MM*(p, c-k) per k for the root (0,0) branch, when known.
    std::vector<std::optional<std::int64_t>> zero_branch;
    bool limited = false;
};

class Search
{
public:
    explicit Search(const SearchContext &ctx)
        : ctx_(ctx), game_(ctx.game), grades_(ctx.game.grade_count()), seen_(static_cast<std::size_t>(grades_))
    {
        pool_all_.resize(game_.guess_count());
        for (std::size_t i = 0; i < pool_all_.size(); ++i)
            pool_all_[i] = static_cast<GuessIndex>(i);
    }

    SearchCounters counters;
    /// Best guess of the most recent evaluate() call, for the trace.
    GuessIndex last_choice = kNoGuess;

    std::int64_t evaluate(std::span<const SecretIndex> set, const ColorState &state, std::int64_t budget,
                          int factor, int left, int depth);

    std::int64_t evaluate_guess(std::span<const SecretIndex> set, GuessIndex guess, const ColorState &state,
                                std::int64_t budget, int factor, int left, int depth, bool allow_zero_shortcut,
                                std::vector<std::pair<GradeIndex, std::int64_t>> *child_values);

    /// Orders the admissible guesses at a node. Returns the child factor.
    int rank(std::span<const SecretIndex> set, const ColorState &refined, std::vector<Choice> &out,
             bool allow_zero_shortcut, int depth, int left);

    ColorState refine(std::span<const SecretIndex> set, const ColorState &state) const;

    void drop_same_partitions(std::span<const SecretIndex> set, std::vector<GuessIndex> &tried) const;

    /// One optimal subtree whose paths need at most `limit` guesses;
    /// empty when no optimal subtree is that shallow.
    std::optional<StrategyNode> build(std::span<const SecretIndex> set, const ColorState &state,
                                      std::int64_t total, int left, int limit);
    std::optional<StrategyNode> expand(std::span<const SecretIndex> set, const ColorState &refined,
                                       GuessIndex guess, std::int64_t total, int child_factor, int left,
                                       int limit);

    std::int64_t part_bound(std::size_t size, int factor, int left) const
    {
        if (ctx_.limited && (left < 1 || static_cast<std::int64_t>(size) > capacity(factor, left)))
            return kInf;
        return ctx_.bounds(size, factor);
    }

private:
    std::int64_t capacity(int factor, int left) const
    {
        const auto &t = ctx_.tables.leaves(factor);
        return left < static_cast<int>(t.size()) ? t[static_cast<std::size_t>(left)] : kInf;
    }

    bool tracing(int depth) const { return ctx_.config.trace != nullptr && depth <= 1; }

    const SearchContext &ctx_;
    const Game &game_;
    int grades_;
    std::vector<std::uint8_t> seen_;
    std::vector<GuessIndex> pool_all_;
    std::unordered_map<std::vector<SecretIndex>, CacheEntry, SetHash> table_;
    std::unordered_map<std::vector<SecretIndex>, int, SetHash> build_failures_;
};

ColorState Search::refine(std::span<const SecretIndex> set, const ColorState &state) const
{
    ColorState refined = state;
    std::array<bool, kMaxColors + 1> present{};
    for (SecretIndex s : set) {
        const Code &c = game_.secret_code(s);
        for (int i = 0; i < c.size(); ++i)
            present[static_cast<std::size_t>(c[i])] = true;
    }
    for (int c = 1; c <= refined.colors(); ++c)
        if (!present[static_cast<std::size_t>(c)])
            refined.mark_zero(c);
    return refined;
}

void Search::drop_same_partitions(std::span<const SecretIndex> set, std::vector<GuessIndex> &tried) const
{
    // Guesses grading the set identically lead to the same subproblems.
    // Keep the first of each; the cost depends on the partition alone.
    const std::size_t n = set.size();
    std::vector<GradeIndex> labels(tried.size() * n);
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    buckets.reserve(tried.size());
    std::size_t kept = 0;
    for (std::size_t i = 0; i < tried.size(); ++i) {
        GradeIndex *row = &labels[kept * n];
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::size_t k = 0; k < n; ++k) {
            row[k] = game_.grade(tried[i], set[k]);
            h = (h ^ row[k]) * 0x100000001b3ull;
        }
        auto &bucket = buckets[h];
        const bool duplicate = std::any_of(bucket.begin(), bucket.end(), [&](std::size_t j) {
            return std::equal(row, row + n, &labels[j * n]);
        });
        if (duplicate)
            continue;
        bucket.push_back(kept);
        tried[kept++] = tried[i];
    }
    tried.resize(kept);
}

int Search::rank(std::span<const SecretIndex> set, const ColorState &refined, std::vector<Choice> &out,
                 bool allow_zero_shortcut, int depth, int left)
{
    out.clear();
    std::vector<GuessIndex> own;
    std::span<const GuessIndex> pool = pool_all_;
    if (ctx_.mode == Mode::possible) {
        own.reserve(set.size());
        for (SecretIndex s : set)
            own.push_back(game_.guess_of_secret(s));
        pool = own;
    }
    std::vector<GuessIndex> tried;
    if (ctx_.config.symmetry) {
        std::vector<IndexedRepresentative> reps;
        representatives(game_, pool, refined, reps, true);
        tried.reserve(reps.size());
        for (const auto &r : reps)
            tried.push_back(r.guess);
    } else {
        tried.assign(pool.begin(), pool.end());
    }

    const std::size_t n = set.size();
    if (tried.size() > 1)
        drop_same_partitions(set, tried);
    const auto g_count = static_cast<std::size_t>(grades_);
    std::vector<std::uint32_t> counts(tried.size() * g_count, 0);
    int max_parts = 1;
    for (std::size_t i = 0; i < tried.size(); ++i) {
        std::uint32_t *row = &counts[i * g_count];
        for (SecretIndex s : set)
            ++row[game_.grade(tried[i], s)];
        int parts = 0;
        for (std::size_t gi = 0; gi + 1 < g_count; ++gi)
            parts += row[gi] != 0;
        max_parts = std::max(max_parts, parts);
    }
    const int child_factor = ctx_.config.k_factor ? std::max(2, std::min(grades_, max_parts + 1)) : grades_;

    for (std::size_t i = 0; i < tried.size(); ++i) {
        const std::uint32_t *row = &counts[i * g_count];
        const bool candidate = row[g_count - 1] != 0;
        int parts = candidate ? 1 : 0;
        std::int64_t est = static_cast<std::int64_t>(n);
        for (std::size_t gi = 0; gi + 1 < g_count; ++gi) {
            if (row[gi] == 0)
                continue;
            ++parts;
            if (row[gi] == n) {
                est = kInf; // nothing learned
                break;
            }
            std::optional<std::int64_t> known;
            if (gi == 0 && allow_zero_shortcut && depth == 0) {
                const int k = game_.guess_code(tried[i]).distinct_colors();
                if (k < static_cast<int>(ctx_.zero_branch.size()))
                    known = ctx_.zero_branch[static_cast<std::size_t>(k)];
            }
            est += known ? *known : part_bound(row[gi], child_factor, left - 1);
        }
        if (est >= kInf)
            continue;
        out.push_back({tried[i], est, parts, candidate});
    }
    if (tracing(depth) && depth == 1) {
        if (ctx_.config.symmetry && tried.size() < pool.size())
            *ctx_.config.trace << "Symmetry: " << tried.size() << " versus " << pool.size() << "\n";
        *ctx_.config.trace << "Will try " << out.size() << " combs finally\n";
    }
    std::stable_sort(out.begin(), out.end(), [](const Choice &a, const Choice &b) {
        if (a.estimate != b.estimate)
            return a.estimate < b.estimate;
        if (a.candidate != b.candidate)
            return a.candidate;
        return a.guess < b.guess;
    });
    return child_factor;
}

std::int64_t Search::evaluate(std::span<const SecretIndex> set, const ColorState &state, std::int64_t budget,
                              int factor, int left, int depth)
{
    ++counters.nodes;
    const std::size_t n = set.size();
    last_choice = n >= 1 ? game_.guess_of_secret(set.front()) : kNoGuess;
    if (left < 1)
        return kInf;
    if (n == 1)
        return 1;
    if (left < 2)
        return kInf;
    if (ctx_.limited && static_cast<std::int64_t>(n) > capacity(factor, left))
        return kInf;
    const bool shortcuts = ctx_.config.shortcuts;
    if (shortcuts && n == 2)
        return 3;

    std::int64_t floor = ctx_.bounds(n, factor);
    if (floor >= budget)
        return floor;

    const bool cacheable = ctx_.config.transposition_cache && n >= kMinCachedSet;
    std::vector<SecretIndex> key;
    if (cacheable) {
        key.assign(set.begin(), set.end());
        if (ctx_.limited)
            key.push_back(static_cast<SecretIndex>(left) | 0x80000000u);
        auto it = table_.find(key);
        if (it != table_.end()) {
            ++counters.cache_hits;
            if (it->second.exact) {
                last_choice = it->second.guess;
                return it->second.value;
            }
            floor = std::max(floor, it->second.value);
            if (floor >= budget)
                return floor;
        }
    }

    if (shortcuts && n <= static_cast<std::size_t>(grades_)) {
        for (SecretIndex s : set)
            if (separates(game_, game_.guess_of_secret(s), set, seen_)) {
                ++counters.shortcuts;
                last_choice = game_.guess_of_secret(s);
                return static_cast<std::int64_t>(2 * n - 1);
            }
    }

    const ColorState refined = ctx_.config.symmetry ? refine(set, state) : state;
    std::vector<Choice> choices;
    const int child_factor = rank(set, refined, choices, false, depth, left);

    std::int64_t best = budget;
    std::int64_t lower = kInf;
    bool found = false;
    GuessIndex chosen = kNoGuess;
    for (const Choice &c : choices) {
        if (c.estimate >= best) {
            lower = std::min(lower, c.estimate);
            break;
        }
        const std::int64_t v =
            evaluate_guess(set, c.guess, refined, best, child_factor, left, depth, false, nullptr);
        if (v < best) {
            best = v;
            found = true;
            chosen = c.guess;
            if (best <= floor)
                break;
        } else {
            lower = std::min(lower, v);
        }
    }
    const std::int64_t result = found ? best : std::max(floor, lower);
    last_choice = chosen;
    if (cacheable) {
        if (table_.size() >= kMaxCacheEntries)
            table_.clear();
        table_[std::move(key)] = {result, found || result >= kInf, chosen};
    }
    return result;
}

std::int64_t Search::evaluate_guess(std::span<const SecretIndex> set, GuessIndex guess, const ColorState &state,
                                    std::int64_t budget, int factor, int left, int depth,
                                    bool allow_zero_shortcut,
                                    std::vector<std::pair<GradeIndex, std::int64_t>> *child_values)
{
    ++counters.guesses;
    const auto g_count = static_cast<std::size_t>(grades_);
    const std::size_t n = set.size();

    // counting sort by grade keeps each part in increasing order
    std::vector<std::uint32_t> start(g_count + 1, 0);
    std::vector<GradeIndex> grade_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        grade_of[i] = game_.grade(guess, set[i]);
        ++start[grade_of[i] + 1];
    }
    for (std::size_t gi = 0; gi < g_count; ++gi)
        start[gi + 1] += start[gi];
    std::vector<SecretIndex> sorted(n);
    {
        std::vector<std::uint32_t> pos(start.begin(), start.end() - 1);
        for (std::size_t i = 0; i < n; ++i)
            sorted[pos[grade_of[i]]++] = set[i];
    }

    struct Part
    {
        GradeIndex grade;
        std::uint32_t begin;
        std::uint32_t size;
        std::int64_t estimate;
        bool known;
    };
    std::vector<Part> parts;
    std::int64_t predicted = static_cast<std::int64_t>(n);
    const Code &code = game_.guess_code(guess);
    for (std::size_t gi = 0; gi + 1 < g_count; ++gi) {
        const std::uint32_t size = start[gi + 1] - start[gi];
        if (size == 0)
            continue;
        Part p{static_cast<GradeIndex>(gi), start[gi], size, 0, false};
        if (gi == 0 && allow_zero_shortcut && depth == 0) {
            const int k = code.distinct_colors();
            if (k < static_cast<int>(ctx_.zero_branch.size()) && ctx_.zero_branch[static_cast<std::size_t>(k)]) {
                p.estimate = *ctx_.zero_branch[static_cast<std::size_t>(k)];
                p.known = true;
                ++counters.shortcuts;
            }
        }
        if (!p.known)
            p.estimate = part_bound(size, factor, left - 1);
        predicted += p.estimate;
        parts.push_back(p);
    }

    auto prune = [&] {
        ++counters.pruned;
        if (ctx_.config.on_prune)
            ctx_.config.on_prune(PruneEvent{std::vector<SecretIndex>(set.begin(), set.end()), guess, budget,
                                            predicted, left});
        return predicted;
    };
    if (predicted >= budget)
        return prune();

    std::stable_sort(parts.begin(), parts.end(), [](const Part &a, const Part &b) { return a.size < b.size; });

    std::ostream *trace = tracing(depth) && depth == 0 ? ctx_.config.trace : nullptr;
    std::int64_t done = 0;
    if (trace != nullptr) {
        *trace << "----- " << code.to_string() << " (E=" << predicted << ",g="
               << parts.size() + (start[g_count] > start[g_count - 1] ? 1 : 0) << ")\n";
        if (start[g_count] > start[g_count - 1]) {
            done = 1;
            *trace << "<" << code.to_string() << "," << grade_tag(game_.decode(game_.win_grade())) << ">=1 \n"
                   << code.to_string() << " ->1 ()  E:" << predicted << "/S:" << done << "\n";
        }
    }

    for (const Part &p : parts) {
        const std::span<const SecretIndex> part(sorted.data() + p.begin, p.size);
        std::int64_t v = p.estimate;
        const Grade answer = game_.decode(p.grade);
        if (trace != nullptr)
            *trace << "<" << code.to_string() << "," << grade_tag(answer) << ">=" << p.size << " \n";
        if (!p.known) {
            const std::int64_t child_budget = budget - (predicted - p.estimate);
            v = evaluate(part, update_state(state, code, answer), child_budget, factor, left - 1, depth + 1);
            predicted += v - p.estimate;
        }
        if (child_values != nullptr)
            child_values->emplace_back(p.grade, v);
        if (trace != nullptr) {
            done += v + p.size;
            const GuessIndex shown = p.known ? kNoGuess : last_choice;
            *trace << (shown == kNoGuess ? std::string("*") : game_.guess_code(shown).to_string()) << " ->"
                   << v + p.size << " (";
            if (p.size > 2)
                *trace << p.estimate + p.size;
            *trace << ")  E:" << predicted << "/S:" << done << "\n";
        }
        if (predicted >= budget) {
            if (trace != nullptr)
                *trace << "Min reached already (E:" << predicted << " or S:" << done << " >= " << budget
                       << "). Next one.\n";
            return prune();
        }
    }
    if (trace != nullptr)
        *trace << "\t\t" << code.to_string() << " = " << predicted << "\n";
    return predicted;
}

std::optional<StrategyNode> Search::expand(std::span<const SecretIndex> set, const ColorState &refined,
                                           GuessIndex guess, std::int64_t total, int child_factor, int left,
                                           int limit)
{
    if (limit < 1)
        return std::nullopt;
    std::vector<std::pair<GradeIndex, std::int64_t>> values;
    if (evaluate_guess(set, guess, refined, total + 1, child_factor, left, kQuietDepth, false, &values) != total)
        return std::nullopt;
    StrategyNode node;
    node.guess = game_.guess_code(guess);
    std::vector<std::vector<SecretIndex>> parts(static_cast<std::size_t>(grades_));
    for (SecretIndex s : set)
        parts[game_.grade(guess, s)].push_back(s);
    // largest parts first: they are the likeliest to exceed the limit
    std::sort(values.begin(), values.end(), [&](const auto &a, const auto &b) {
        return parts[a.first].size() != parts[b.first].size() ? parts[a.first].size() > parts[b.first].size()
                                                              : a.first < b.first;
    });
    for (const auto &[gi, value] : values) {
        const Grade answer = game_.decode(gi);
        auto child = build(parts[gi], update_state(refined, node.guess, answer), value, left - 1, limit - 1);
        if (!child)
            return std::nullopt;
        child->via = answer;
        node.children.push_back(std::move(*child));
    }
    std::sort(node.children.begin(), node.children.end(),
              [](const StrategyNode &a, const StrategyNode &b) { return a.via < b.via; });
    return node;
}

std::optional<StrategyNode> Search::build(std::span<const SecretIndex> set, const ColorState &state,
                                          std::int64_t total, int left, int limit)
{
    if (set.size() == 1) {
        if (limit < 1)
            return std::nullopt;
        StrategyNode leaf;
        leaf.guess = game_.secret_code(set.front());
        return leaf;
    }
    if (limit < 2 || minimum_worst_case(static_cast<std::int64_t>(set.size()), game_.pegs()) > limit)
        return std::nullopt;
    std::vector<SecretIndex> key(set.begin(), set.end());
    if (ctx_.limited)
        key.push_back(static_cast<SecretIndex>(left) | 0x80000000u);
    if (auto it = build_failures_.find(key); it != build_failures_.end() && it->second >= limit)
        return std::nullopt;

    const ColorState refined = ctx_.config.symmetry ? refine(set, state) : state;
    std::vector<Choice> choices;
    const int child_factor = rank(set, refined, choices, false, kQuietDepth, left);
    for (const Choice &c : choices) {
        if (c.estimate > total)
            continue;
        if (auto node = expand(set, refined, c.guess, total, child_factor, left, limit))
            return node;
    }
    if (limit >= kUnlimited)
        fail(ErrorCode::internal, "tree reconstruction found no guess reaching the optimal value");
    auto &known = build_failures_[std::move(key)];
    known = std::max(known, limit);
    return std::nullopt;
}

void tally(const Game &game, const StrategyNode &node, std::span<const SecretIndex> set, int depth,
           PathStats &stats)
{
    const GuessIndex g = game.find_guess(node.guess);
    std::vector<std::vector<SecretIndex>> parts(static_cast<std::size_t>(game.grade_count()));
    for (SecretIndex s : set)
        parts[game.grade(g, s)].push_back(s);
    stats.record(depth, static_cast<std::int64_t>(parts[game.win_grade()].size()));
    for (const auto &child : node.children)
        tally(game, child, parts[game.encode(child.via)], depth + 1, stats);
}

struct RootResult
{
    std::int64_t best = 0;
    GuessIndex guess = kNoGuess;
    SearchCounters counters;
};

RootResult search_root(const SearchContext &ctx, std::int64_t budget, int left, bool allow_zero_shortcut)
{
    const Game &game = ctx.game;
    const auto secrets = game.all_secrets();
    const ColorState start = ColorState::initial(game.params());
    std::ostream *trace = ctx.config.trace;

    RootResult result;
    result.best = budget;
    if (secrets.size() == 1) {
        result.best = left >= 1 ? 1 : kInf;
        result.guess = game.guess_of_secret(secrets.front());
        if (result.best >= budget)
            result.guess = kNoGuess;
        return result;
    }

    Search root_search(ctx);
    const ColorState refined = ctx.config.symmetry ? root_search.refine(secrets, start) : start;
    std::vector<Choice> choices;
    const int child_factor = root_search.rank(secrets, refined, choices, allow_zero_shortcut, 0, left);

    if (trace != nullptr) {
        *trace << "With " << game.pegs() << " pegs and " << game.params().secret_colors << " colors:\n"
               << "- there are " << game.grade_count() << " possible ways of grading,\n"
               << "- starting set has " << secrets.size() << " possible combs,\n\n"
               << "The solver will use:\n- for first level, the reduced set of " << choices.size() << " combs (";
        std::vector<GuessIndex> lex;
        for (const auto &c : choices)
            lex.push_back(c.guess);
        std::sort(lex.begin(), lex.end());
        for (std::size_t i = 0; i < lex.size(); ++i)
            *trace << (i ? "," : "") << game.guess_code(lex[i]).to_string();
        *trace << "),\n- an upper bound of " << budget << ".\n\n";
        for (const auto &c : choices)
            if (c.estimate >= budget)
                *trace << "Erase " << game.guess_code(c.guess).to_string() << " (" << c.estimate
                       << ">=" << budget << ")\n";
        *trace << "With the first set :\n";
        for (const auto &c : choices)
            if (c.estimate < budget)
                *trace << game.guess_code(c.guess).to_string() << " = " << c.estimate << "\n";
    }

    std::mutex mutex;
    std::size_t next = 0;
    auto worker = [&](Search &search) {
        for (;;) {
            std::size_t i;
            std::int64_t effective;
            {
                std::lock_guard lock(mutex);
                if (next >= choices.size())
                    return;
                i = next++;
                // a lexicographically smaller guess may tie the incumbent
                effective = result.best + (result.guess != kNoGuess && choices[i].guess < result.guess ? 1 : 0);
            }
            const Choice &c = choices[i];
            if (c.estimate >= effective)
                continue;
            const std::int64_t v = search.evaluate_guess(secrets, c.guess, refined, effective, child_factor, left,
                                                         0, allow_zero_shortcut, nullptr);
            std::lock_guard lock(mutex);
            if (v < result.best || (v == result.best && result.guess != kNoGuess && c.guess < result.guess)) {
                result.best = v;
                result.guess = c.guess;
            }
        }
    };

    const int workers = std::max(1, std::min<int>(ctx.config.workers, static_cast<int>(choices.size())));
    if (workers == 1) {
        worker(root_search);
        result.counters = root_search.counters;
    } else {
        std::vector<Search> searches;
        searches.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            searches.emplace_back(ctx);
        std::vector<std::thread> pool;
        for (auto &s : searches)
            pool.emplace_back([&worker, &s] { worker(s); });
        for (auto &t : pool)
            t.join();
        result.counters = root_search.counters;
        for (auto &s : searches)
            result.counters.merge(s.counters);
    }
    if (trace != nullptr && result.guess != kNoGuess)
        *trace << "Found it in " << result.best << ", starting with " << game.guess_code(result.guess).to_string()
               << "\n";
    return result;
}

struct Prepared
{
    Game game;
    BoundTables tables;
    LowerBoundCache bounds;
};

Prepared prepare(int pegs, int colors, const SolveConfig &config)
{
    const Params params = params_for(config.mode, pegs, colors);
    params.validate();
    if (config.max_guesses && *config.max_guesses < 1)
        fail(ErrorCode::invalid_argument, "max guesses must be positive");
    if (config.workers < 1)
        fail(ErrorCode::invalid_argument, "workers must be positive");
    Game game(params, GameOptions{config.grade_table, config.grade_table_budget});
    const int g = game.grade_count();
    const auto n = static_cast<std::int64_t>(game.secret_count());
    return Prepared{std::move(game), build_tables(g), LowerBoundCache(g, n)};
}

} // namespace

// ---------------------------------------------------------------------------

SolveOutcome solve(int pegs, int colors, const SolveConfig &config)
{
    Prepared prep = prepare(pegs, colors, config);
    const Game &game = prep.game;

    SolveOutcome outcome;
    outcome.params = game.params();
    outcome.mode = config.mode;

    const std::string cache_path = config.cache_path;
    ResultCache cache;
    if (!cache_path.empty())
        cache = ResultCache::load(cache_path, &outcome.warnings);

    SearchContext ctx{game, config, config.mode, prep.bounds, prep.tables, {}, config.max_guesses.has_value()};
    const int left = config.max_guesses ? *config.max_guesses : kUnlimited;

    const bool zero_shortcut = config.mode == Mode::possible && config.shortcuts && !config.want_tree && !ctx.limited;
    if (zero_shortcut) {
        ctx.zero_branch.resize(static_cast<std::size_t>(std::min(pegs, colors)) + 1);
        for (int k = 1; k < static_cast<int>(ctx.zero_branch.size()); ++k)
            if (colors - k >= 1)
                ctx.zero_branch[static_cast<std::size_t>(k)] = cache.get(Mode::possible, pegs, colors - k);
    }

    // incumbent: explicit bound, cached value, or the heuristic / possible-mode chain
    std::int64_t budget = kInf;
    bool from_cache = false;
    bool explicit_bound = false;
    if (config.initial_upper_bound) {
        if (*config.initial_upper_bound < 1)
            fail(ErrorCode::invalid_argument, "upper bound must be positive");
        budget = *config.initial_upper_bound + 1;
        explicit_bound = true;
    } else if (auto cached = cache.get(config.mode, pegs, colors); cached && !ctx.limited) {
        budget = *cached + 1;
        from_cache = true;
    }

    auto chain_budget = [&]() -> std::int64_t {
        RolloutOptions ro;
        ro.possible_only = true;
        ro.build_tree = false;
        ro.use_symmetry = config.symmetry;
        std::int64_t bound = kInf;
        const auto r = rollout(game, Policy::entropy, ro);
        if (!ctx.limited || r.stats.worst <= left)
            bound = r.stats.total + 1;
        if (config.mode == Mode::possible)
            return bound;
        // a rollout over the whole guess alphabet is often far tighter than possible-only play
        ro.possible_only = false;
        const auto wide = rollout(game, Policy::entropy, ro);
        if (!ctx.limited || wide.stats.worst <= left)
            bound = std::min(bound, wide.stats.total + 1);
        SolveConfig sub = config;
        sub.mode = Mode::possible;
        sub.want_tree = false;
        sub.trace = nullptr;
        sub.on_prune = nullptr;
        sub.initial_upper_bound = bound < kInf ? std::optional<std::int64_t>(bound - 1) : std::nullopt;
        try {
            const auto possible = solve(pegs, colors, sub);
            return std::min(bound, possible.stats.total + 1);
        } catch (const Error &e) {
            if (e.code() == ErrorCode::infeasible || e.code() == ErrorCode::bound_too_low)
                return bound;
            throw;
        }
    };
    if (budget >= kInf)
        budget = chain_budget();

    outcome.start_budget = budget;
    RootResult root = search_root(ctx, budget, left, zero_shortcut);
    if (root.guess == kNoGuess && from_cache) {
        outcome.warnings.push_back("cached value " + std::to_string(budget - 1) +
                                   " is not reachable; ignoring the cache entry");
        budget = chain_budget();
        outcome.start_budget = budget;
        root = search_root(ctx, budget, left, zero_shortcut);
    }
    outcome.counters = root.counters;
    if (root.guess == kNoGuess || root.best >= kInf) {
        if (explicit_bound && budget < kInf)
            fail(ErrorCode::bound_too_low, "no strategy reaches L <= " + std::to_string(budget - 1));
        if (ctx.limited)
            fail(ErrorCode::infeasible,
                 "no strategy finds every code within " + std::to_string(left) + " guesses");
        fail(ErrorCode::internal, "search finished without a strategy");
    }

    // reconstruct one optimal strategy for W and the histogram
    Search builder(ctx);
    const auto secrets = game.all_secrets();
    const ColorState start = ColorState::initial(game.params());
    StrategyNode root_node;
    PathStats stats;
    if (secrets.size() == 1) {
        root_node.guess = game.guess_code(root.guess);
        stats.record(1);
    } else {
        const ColorState refined = config.symmetry ? builder.refine(secrets, start) : start;
        std::vector<Choice> ignore;
        const int child_factor = builder.rank(secrets, refined, ignore, false, kQuietDepth, left);
        auto node = builder.expand(secrets, refined, root.guess, root.best, child_factor, left, kUnlimited);
        if (!node)
            fail(ErrorCode::internal, "root value does not reproduce during reconstruction");
        tally(game, *node, secrets, 1, stats);
        while (config.minimize_worst && stats.worst > 1) {
            auto shallower =
                builder.expand(secrets, refined, root.guess, root.best, child_factor, left, stats.worst - 1);
            if (!shallower)
                break;
            node = std::move(shallower);
            stats = PathStats{};
            tally(game, *node, secrets, 1, stats);
        }
        root_node = std::move(*node);
    }
    if (stats.total != root.best)
        fail(ErrorCode::internal, "reconstructed strategy totals " + std::to_string(stats.total) +
                                      " instead of " + std::to_string(root.best));
    outcome.counters.merge(builder.counters);
    outcome.stats = stats;
    outcome.first_guess = root_node.guess;
    if (config.want_tree) {
        StrategyTree tree;
        tree.pegs = pegs;
        tree.colors = colors;
        tree.mode = config.mode;
        tree.claimed_total = stats.total;
        tree.claimed_worst = stats.worst;
        tree.root = std::move(root_node);
        outcome.tree = std::move(tree);
    }

    if (!cache_path.empty() && !ctx.limited) {
        auto previous = cache.get(config.mode, pegs, colors);
        if (previous && *previous != stats.total)
            outcome.warnings.push_back("cache held " + std::to_string(*previous) + ", replaced by " +
                                       std::to_string(stats.total));
        cache.put(config.mode, pegs, colors, stats.total);
        cache.save(cache_path);
    }
    return outcome;
}

std::int64_t solve_subset(const Game &game, Mode mode, std::span<const SecretIndex> candidates,
                          const SolveConfig &config)
{
    if (candidates.empty())
        fail(ErrorCode::invalid_argument, "empty candidate set");
    if (!std::is_sorted(candidates.begin(), candidates.end()))
        fail(ErrorCode::invalid_argument, "candidate set must be sorted");
    const int g = game.grade_count();
    const BoundTables tables = build_tables(g);
    const LowerBoundCache bounds(g, static_cast<std::int64_t>(candidates.size()));
    SolveConfig sub = config;
    // the initial color state is only valid for the complete code set
    sub.symmetry = sub.symmetry && candidates.size() == game.secret_count();
    sub.trace = nullptr;
    SearchContext ctx{game, sub, mode, bounds, tables, {}, sub.max_guesses.has_value()};
    Search search(ctx);
    const int left = sub.max_guesses ? *sub.max_guesses : kUnlimited;
    const std::int64_t v = search.evaluate(candidates, ColorState::initial(game.params()), kInf, g, left, 2);
    if (v >= kInf)
        fail(ErrorCode::infeasible, "no strategy within the guess limit");
    return v;
}

} // namespace mastermind
