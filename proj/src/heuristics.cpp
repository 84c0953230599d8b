#include "mastermind/heuristics.hpp"

#include "mastermind/error.hpp"
#include "mastermind/symmetry.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace mastermind {

std::string to_string(Policy policy)
{
    switch (policy) {
    case Policy::max_size:
        return "max-size";
    case Policy::expected_size:
        return "expected-size";
    case Policy::entropy:
        return "entropy";
    case Policy::most_parts:
        return "most-parts";
    }
    return "?";
}

Policy parse_policy(std::string_view text)
{
    for (auto p : {Policy::max_size, Policy::expected_size, Policy::entropy, Policy::most_parts})
        if (text == to_string(p))
            return p;
    fail(ErrorCode::parse, "unknown policy '" + std::string(text) + "'");
}

std::string to_string(EntropyTies ties)
{
    return ties == EntropyTies::strict ? "strict" : "tolerant";
}

EntropyTies parse_entropy_ties(std::string_view text)
{
    if (text == "tolerant")
        return EntropyTies::tolerant;
    if (text == "strict")
        return EntropyTies::strict;
    fail(ErrorCode::parse, "unknown entropy tie mode '" + std::string(text) + "'");
}

TieOrder parse_tie_order(std::string_view text)
{
    if (text == "first")
        return TieOrder::first;
    if (text == "last")
        return TieOrder::last;
    fail(ErrorCode::parse, "unknown tie order '" + std::string(text) + "'");
}

std::size_t Partition::part_count() const noexcept
{
    return static_cast<std::size_t>(
        std::count_if(parts.begin(), parts.end(), [](const auto &p) { return !p.empty(); }));
}

std::vector<std::int64_t> Partition::sizes() const
{
    std::vector<std::int64_t> s;
    for (const auto &p : parts)
        s.push_back(static_cast<std::int64_t>(p.size()));
    return s;
}

Partition partition_by_guess(const Game &game, std::span<const SecretIndex> candidates, GuessIndex guess)
{
    if (candidates.empty())
        fail(ErrorCode::invalid_argument, "cannot partition an empty candidate set");
    Partition p;
    p.source_guess = game.guess_code(guess);
    p.parts.resize(static_cast<std::size_t>(game.grade_count()));
    for (SecretIndex s : candidates)
        p.parts[game.grade(guess, s)].push_back(s);
    return p;
}

Score score(std::span<const std::int64_t> sizes, Policy policy, std::int64_t n, std::int64_t win_part,
            bool count_win_part)
{
    Score sc;
    switch (policy) {
    case Policy::max_size:
        for (auto s : sizes)
            sc.exact = std::max(sc.exact, s);
        break;
    case Policy::expected_size:
        for (auto s : sizes)
            sc.exact += s * s;
        break;
    case Policy::entropy:
        // Summed from the win grade downward. Strict comparison makes the
        // rounding noise of this order part of the policy.
        for (auto it = sizes.rbegin(); it != sizes.rend(); ++it) {
            if (*it > 0) {
                const double q = static_cast<double>(*it) / static_cast<double>(n);
                sc.entropy -= q * std::log(q) / std::log(2.0);
            }
        }
        break;
    case Policy::most_parts:
        for (auto s : sizes)
            sc.exact += s > 0;
        if (!count_win_part && win_part > 0)
            --sc.exact;
        break;
    }
    return sc;
}

Score score(const Partition &partition, Policy policy, std::int64_t n)
{
    auto sizes = partition.sizes();
    return score(sizes, policy, n, sizes.empty() ? 0 : sizes.back());
}

int compare(Policy policy, const Score &a, const Score &b, EntropyTies ties) noexcept
{
    switch (policy) {
    case Policy::max_size:
    case Policy::expected_size:
        return a.exact < b.exact ? 1 : a.exact > b.exact ? -1 : 0;
    case Policy::most_parts:
        return a.exact > b.exact ? 1 : a.exact < b.exact ? -1 : 0;
    case Policy::entropy: {
        if (ties == EntropyTies::strict)
            return a.entropy > b.entropy ? 1 : a.entropy < b.entropy ? -1 : 0;
        const double scale = std::max({1.0, std::fabs(a.entropy), std::fabs(b.entropy)});
        if (std::fabs(a.entropy - b.entropy) <= kEntropyTieTolerance * scale)
            return 0;
        return a.entropy > b.entropy ? 1 : -1;
    }
    }
    return 0;
}

namespace {

/// Scratch-buffer scorer shared by the public selector and rollouts.
class Scorer
{
public:
    Scorer(const Game &game, Policy policy, bool count_win_part)
        : game_(game), policy_(policy), count_win_part_(count_win_part),
          counts_(static_cast<std::size_t>(game.grade_count()))
    {
    }

    Score operator()(std::span<const SecretIndex> set, GuessIndex g)
    {
        std::fill(counts_.begin(), counts_.end(), 0);
        for (SecretIndex s : set)
            ++counts_[game_.grade(g, s)];
        return score(counts_, policy_, static_cast<std::int64_t>(set.size()), counts_.back(), count_win_part_);
    }

private:
    const Game &game_;
    Policy policy_;
    bool count_win_part_;
    std::vector<std::int64_t> counts_;
};

class Membership
{
public:
    explicit Membership(const Game &game) : flags_(game.secret_count(), 0) {}

    void set(std::span<const SecretIndex> s, bool on)
    {
        for (auto x : s)
            flags_[x] = on;
    }
    bool contains(SecretIndex s) const { return s != kNoSecret && flags_[s] != 0; }

private:
    std::vector<std::uint8_t> flags_;
};

/// A candidate splitting the set into singletons is optimal under every
/// policy; among such candidates the tie order decides.
GuessIndex discriminating_candidate(const Game &game, std::span<const SecretIndex> set, TieOrder tie)
{
    if (set.size() > static_cast<std::size_t>(game.grade_count()))
        return kNoGuess;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(game.grade_count()));
    auto try_one = [&](SecretIndex c) {
        const GuessIndex g = game.guess_of_secret(c);
        std::fill(seen.begin(), seen.end(), 0);
        for (SecretIndex s : set) {
            auto &slot = seen[game.grade(g, s)];
            if (slot)
                return false;
            slot = 1;
        }
        return true;
    };
    if (tie == TieOrder::first) {
        for (SecretIndex c : set)
            if (try_one(c))
                return game.guess_of_secret(c);
    } else {
        for (auto it = set.rbegin(); it != set.rend(); ++it)
            if (try_one(*it))
                return game.guess_of_secret(*it);
    }
    return kNoGuess;
}

template <class Pred>
GuessIndex pick(std::span<const GuessIndex> guesses, std::span<const SecretIndex> set, const Game &game,
                TieOrder tie, Pred optimal)
{
    // candidates first (set is sorted, so its guess indices are too)
    if (tie == TieOrder::first) {
        for (SecretIndex s : set)
            if (optimal(game.guess_of_secret(s)))
                return game.guess_of_secret(s);
        for (GuessIndex g : guesses)
            if (optimal(g))
                return g;
    } else {
        for (auto it = set.rbegin(); it != set.rend(); ++it)
            if (optimal(game.guess_of_secret(*it)))
                return game.guess_of_secret(*it);
        for (auto it = guesses.rbegin(); it != guesses.rend(); ++it)
            if (optimal(*it))
                return *it;
    }
    return kNoGuess;
}

} // namespace

GuessIndex select_guess(const Game &game, std::span<const SecretIndex> candidates,
                        std::span<const GuessIndex> guesses, Policy policy, TieOrder tie, EntropyTies ties)
{
    if (candidates.empty())
        fail(ErrorCode::invalid_argument, "select_guess needs candidates");
    if (candidates.size() == 1)
        return game.guess_of_secret(candidates.front());
    Scorer scorer(game, policy, true);
    std::vector<Score> scores(guesses.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < guesses.size(); ++i) {
        scores[i] = scorer(candidates, guesses[i]);
        if (compare(policy, scores[i], scores[best], ties) > 0)
            best = i;
    }
    const Score top = scores[best];
    Membership in_set(game);
    in_set.set(candidates, true);
    std::vector<std::uint8_t> optimal(game.guess_count(), 0);
    bool any = false;
    for (std::size_t i = 0; i < guesses.size(); ++i)
        if (compare(policy, scores[i], top, ties) == 0) {
            optimal[guesses[i]] = 1;
            any = true;
        }
    if (!any)
        fail(ErrorCode::internal, "no guess scored");
    // candidates among the optimal guesses, restricted to the given pool
    std::vector<SecretIndex> pool_candidates;
    for (SecretIndex s : candidates)
        if (optimal[game.guess_of_secret(s)])
            pool_candidates.push_back(s);
    return pick(guesses, pool_candidates, game, tie, [&](GuessIndex g) { return optimal[g] != 0; });
}

// ---------------------------------------------------------------------------
// Rollouts

namespace {

class Roller
{
public:
    Roller(const Game &game, Policy policy, const RolloutOptions &options)
        : game_(game), policy_(policy), options_(options), scorer_(game, policy, options.count_win_part)
    {
        all_.resize(game.guess_count());
        for (std::size_t i = 0; i < all_.size(); ++i)
            all_[i] = static_cast<GuessIndex>(i);
    }

    GuessIndex choose(std::span<const SecretIndex> set, const ColorState &state)
    {
        if (set.size() == 1)
            return game_.guess_of_secret(set.front());
        if (auto g = discriminating_candidate(game_, set, options_.tie); g != kNoGuess)
            return g;

        std::span<const GuessIndex> pool = all_;
        std::vector<GuessIndex> own;
        if (options_.possible_only) {
            own.reserve(set.size());
            for (SecretIndex s : set)
                own.push_back(game_.guess_of_secret(s));
            pool = own;
        }

        if (!options_.use_symmetry) {
            std::vector<Score> scores(pool.size());
            Score top;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                scores[i] = scorer_(set, pool[i]);
                if (i == 0 || compare(policy_, scores[i], top, options_.entropy_ties) > 0)
                    top = scores[i];
            }
            std::vector<std::uint8_t> optimal(game_.guess_count(), 0);
            for (std::size_t i = 0; i < pool.size(); ++i)
                optimal[pool[i]] = compare(policy_, scores[i], top, options_.entropy_ties) == 0;
            return pick(pool, set, game_, options_.tie, [&](GuessIndex g) { return optimal[g] != 0; });
        }

        ColorState refined = state;
        refine_zero_colors(set, refined);
        representatives(game_, pool, refined, reps_);
        std::vector<Score> scores(reps_.size());
        Score top;
        for (std::size_t i = 0; i < reps_.size(); ++i) {
            scores[i] = scorer_(set, reps_[i].guess);
            if (i == 0 || compare(policy_, scores[i], top, options_.entropy_ties) > 0)
                top = scores[i];
        }
        std::vector<std::uint64_t> keys;
        for (std::size_t i = 0; i < reps_.size(); ++i)
            if (compare(policy_, scores[i], top, options_.entropy_ties) == 0)
                keys.push_back(signature(game_.guess_code(reps_[i].guess), refined).key);
        std::sort(keys.begin(), keys.end());
        auto optimal = [&](GuessIndex g) {
            return std::binary_search(keys.begin(), keys.end(), signature(game_.guess_code(g), refined).key);
        };
        return pick(pool, set, game_, options_.tie, optimal);
    }

    void refine_zero_colors(std::span<const SecretIndex> set, ColorState &state) const
    {
        std::array<bool, kMaxColors + 1> present{};
        for (SecretIndex s : set) {
            const Code &c = game_.secret_code(s);
            for (int i = 0; i < c.size(); ++i)
                present[static_cast<std::size_t>(c[i])] = true;
        }
        for (int c = 1; c <= state.colors(); ++c)
            if (!present[static_cast<std::size_t>(c)])
                state.mark_zero(c);
    }

    /// Plays `guess` (or the policy's choice when kNoGuess) at this node.
    void expand(std::span<const SecretIndex> set, const ColorState &state, int depth, GuessIndex guess,
                PathStats &stats, StrategyNode *node)
    {
        if (guess == kNoGuess)
            guess = choose(set, state);
        const Code &code = game_.guess_code(guess);
        if (node != nullptr)
            node->guess = code;

        auto parts = split(set, guess);
        for (std::size_t gi = 0; gi < parts.size(); ++gi) {
            auto &part = parts[gi];
            if (part.empty())
                continue;
            if (gi == game_.win_grade()) {
                stats.record(depth);
                continue;
            }
            const Grade answer = game_.decode(static_cast<GradeIndex>(gi));
            StrategyNode *child = node != nullptr ? &node->add_child(answer, code) : nullptr;
            expand(part, update_state(state, code, answer), depth + 1, kNoGuess, stats, child);
        }
    }

    std::vector<std::vector<SecretIndex>> split(std::span<const SecretIndex> set, GuessIndex guess) const
    {
        std::vector<std::vector<SecretIndex>> parts(static_cast<std::size_t>(game_.grade_count()));
        for (SecretIndex s : set)
            parts[game_.grade(guess, s)].push_back(s);
        return parts;
    }

private:
    const Game &game_;
    Policy policy_;
    const RolloutOptions &options_;
    Scorer scorer_;
    std::vector<GuessIndex> all_;
    std::vector<IndexedRepresentative> reps_;
};

StrategyTree make_tree_header(const Game &game, Mode mode, const PathStats &stats)
{
    StrategyTree t;
    t.pegs = game.pegs();
    t.colors = game.params().secret_colors;
    t.mode = mode;
    t.claimed_total = stats.total;
    t.claimed_worst = stats.worst;
    return t;
}

} // namespace

RolloutResult rollout(const Game &game, Policy policy, const RolloutOptions &options)
{
    const auto secrets = game.all_secrets();
    const ColorState start = ColorState::initial(game.params());
    Roller root_roller(game, policy, options);

    GuessIndex first = kNoGuess;
    if (options.first_guess) {
        first = game.find_guess(*options.first_guess);
        if (first == kNoGuess)
            fail(ErrorCode::invalid_argument, "first guess " + options.first_guess->to_string() +
                                                  " is not a code of this game");
    } else {
        first = root_roller.choose(secrets, start);
    }
    const Code &first_code = game.guess_code(first);

    RolloutResult result;
    result.first_guess = first_code;
    StrategyNode root;
    root.guess = first_code;

    auto parts = root_roller.split(secrets, first);
    struct Task
    {
        GradeIndex grade;
        PathStats stats;
        StrategyNode node;
    };
    std::vector<Task> tasks;
    for (std::size_t gi = 0; gi < parts.size(); ++gi) {
        if (parts[gi].empty())
            continue;
        if (gi == game.win_grade()) {
            result.stats.record(1);
            continue;
        }
        tasks.push_back({static_cast<GradeIndex>(gi), {}, {}});
    }

    auto run = [&](Task &task, Roller &roller) {
        const Grade answer = game.decode(task.grade);
        task.node.via = answer;
        roller.expand(parts[task.grade], update_state(start, first_code, answer), 2, kNoGuess, task.stats,
                      options.build_tree ? &task.node : nullptr);
    };

    const int workers = std::max(1, std::min<int>(options.workers, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (auto &t : tasks)
            run(t, root_roller);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                Roller roller(game, policy, options);
                for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
                    run(tasks[i], roller);
            });
        for (auto &th : pool)
            th.join();
    }

    for (auto &t : tasks) {
        result.stats.merge(t.stats);
        if (options.build_tree)
            root.children.push_back(std::move(t.node));
    }
    if (options.build_tree) {
        auto tree = make_tree_header(game, options.possible_only ? Mode::possible : Mode::full, result.stats);
        tree.root = std::move(root);
        result.tree = std::move(tree);
    }
    return result;
}

RolloutResult consistency_rollout(const Game &game, std::optional<Code> first_guess, bool build_tree, int workers)
{
    const std::size_t n = game.secret_count();
    SecretIndex first = 0;
    bool forced = false;
    if (first_guess) {
        first = game.find_secret(*first_guess);
        if (first == kNoSecret)
            fail(ErrorCode::invalid_argument, "first guess " + first_guess->to_string() +
                                                  " is not a possible code of this game");
        forced = true;
    }
    const GradeIndex win = game.win_grade();

    struct Step
    {
        SecretIndex guess;
        GradeIndex answer;
    };

    // Replays one secret; returns its guess sequence with answers.
    auto replay = [&](SecretIndex secret, std::vector<Step> &steps) {
        steps.clear();
        SecretIndex guess = first;
        // codes below the last scan-chosen guess are already inconsistent
        SecretIndex scan_from = forced ? 0 : first + 1;
        for (;;) {
            const GradeIndex answer = game.grade(game.guess_of_secret(guess), secret);
            steps.push_back({guess, answer});
            if (answer == win)
                return;
            SecretIndex next = kNoSecret;
            for (SecretIndex x = scan_from; x < n; ++x) {
                bool ok = true;
                for (const Step &st : steps)
                    if (game.grade(game.guess_of_secret(st.guess), x) != st.answer) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    next = x;
                    break;
                }
            }
            if (next == kNoSecret)
                fail(ErrorCode::internal, "consistency replay found no consistent code");
            for (const Step &st : steps)
                if (st.guess == next)
                    fail(ErrorCode::internal, "consistency replay repeated a guess");
            guess = next;
            scan_from = next + 1;
        }
    };

    RolloutResult result;
    result.first_guess = game.secret_code(first);
    std::vector<std::vector<Step>> paths(n);

    const int pool_size = std::max(1, workers);
    if (pool_size == 1) {
        for (SecretIndex s = 0; s < n; ++s)
            replay(s, paths[s]);
    } else {
        std::atomic<SecretIndex> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < pool_size; ++w)
            pool.emplace_back([&] {
                for (SecretIndex s; (s = next.fetch_add(1)) < n;)
                    replay(s, paths[s]);
            });
        for (auto &th : pool)
            th.join();
    }

    StrategyNode root;
    root.guess = game.secret_code(first);
    for (SecretIndex s = 0; s < n; ++s) {
        const auto &steps = paths[s];
        result.stats.record(static_cast<int>(steps.size()));
        if (!build_tree)
            continue;
        StrategyNode *node = &root;
        for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
            const Grade answer = game.decode(steps[i].answer);
            const Code &next_code = game.secret_code(steps[i + 1].guess);
            auto *child = const_cast<StrategyNode *>(node->child(answer));
            if (child == nullptr)
                child = &node->add_child(answer, next_code);
            else if (child->guess != next_code)
                fail(ErrorCode::internal, "consistency strategy is not a tree");
            node = child;
        }
    }
    if (build_tree) {
        auto tree = make_tree_header(game, Mode::possible, result.stats);
        tree.root = std::move(root);
        result.tree = std::move(tree);
    }
    return result;
}

} // namespace mastermind
