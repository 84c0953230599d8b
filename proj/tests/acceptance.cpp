// acceptance -- one PASS/FAIL line per acceptance criterion.
//
// Default run covers everything that fits a desk-scale budget. --slow adds
// the MM(5,8) heuristic table and the symmetry-off solves of the largest
// oracle instances; --flagship adds the MM(4,7) optimum, which has no time
// bound. Deferred parts are reported as SKIP, never as PASS.

#include "mastermind/bounds.hpp"
#include "mastermind/error.hpp"
#include "mastermind/heuristics.hpp"
#include "mastermind/solver.hpp"
#include "mastermind/strategy.hpp"
#include "mastermind/symmetry.hpp"
#include "oracle.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace mastermind;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const std::string &title, bool pass, const std::string &detail, double secs)
{
    std::printf("%s %2d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str(), secs);
    std::fflush(stdout);
    if (!pass)
        ++failures;
}

void skip(int id, const std::string &title, const std::string &why)
{
    std::printf("SKIP %2d %s: %s\n", id, title.c_str(), why.c_str());
    std::fflush(stdout);
}

// Collects mismatches as text; empty means the criterion holds.
struct Problems
{
    std::vector<std::string> items;

    void expect(bool ok, const std::string &what)
    {
        if (!ok)
            items.push_back(what);
    }
    bool ok() const { return items.empty(); }
    std::string summary(const std::string &good) const
    {
        if (items.empty())
            return good;
        std::string out = std::to_string(items.size()) + " mismatch(es): " + items.front();
        for (std::size_t i = 1; i < items.size() && i < 4; ++i)
            out += "; " + items[i];
        return out;
    }
};

std::string stats_text(const PathStats &s)
{
    std::ostringstream out;
    out << "L=" << s.total << " W=" << s.worst;
    return out.str();
}

// Every solve goes through here so that criterion 17 sees every tree.
struct Solved
{
    SolveOutcome outcome;
    bool replay_ok = false;
};

std::map<std::tuple<int, int, int>, Solved> solved;
Problems replay_problems;
std::size_t replayed_trees = 0;

const SolveOutcome &optimum(Mode mode, int p, int c, std::function<void(const PruneEvent &)> on_prune = nullptr)
{
    const auto key = std::tuple{static_cast<int>(mode), p, c};
    auto it = solved.find(key);
    if (it != solved.end())
        return it->second.outcome;
    SolveConfig config;
    config.mode = mode;
    config.want_tree = true;
    config.deterministic = true;
    config.on_prune = std::move(on_prune);
    Solved s{solve(p, c, config), false};
    const TreeStats replay = verify(*s.outcome.tree);
    s.replay_ok = replay.paths == s.outcome.stats && replay.warnings.empty();
    ++replayed_trees;
    replay_problems.expect(s.replay_ok, to_string(mode) + "(" + std::to_string(p) + "," + std::to_string(c) +
                                            ") replays to " + stats_text(replay.paths));
    return solved.emplace(key, std::move(s)).first->second.outcome;
}

std::string name(Mode mode, int p, int c)
{
    return to_string(mode) + "(" + std::to_string(p) + "," + std::to_string(c) + ")";
}

int oracle_mode(Mode mode)
{
    return mode == Mode::full ? 0 : mode == Mode::possible ? 1 : 2;
}

// (p,c) with c^p <= 256 inside the library's color range.
std::vector<std::pair<int, int>> oracle_instances(Mode mode)
{
    std::vector<std::pair<int, int>> out;
    const int max_colors = mode == Mode::extended ? kMaxColors - 1 : kMaxColors;
    for (int p = 1; p <= 8; ++p)
        for (int c = 1; c <= max_colors; ++c)
            if (checked_power(static_cast<std::uint64_t>(c), p) <= 256)
                out.emplace_back(p, c);
    return out;
}

// ---- 1 -------------------------------------------------------------------

void grading()
{
    const auto t0 = Clock::now();
    Problems pr;
    const char *codes[] = {"121", "122", "126", "153", "323", "623"};
    const Grade table[6][6] = {
        {{3, 0}, {2, 0}, {2, 0}, {1, 0}, {1, 0}, {1, 0}},
        {{2, 0}, {3, 0}, {2, 0}, {1, 0}, {1, 0}, {1, 0}},
        {{2, 0}, {2, 0}, {3, 0}, {1, 0}, {1, 0}, {1, 1}},
        {{1, 0}, {1, 0}, {1, 0}, {3, 0}, {1, 0}, {1, 0}},
        {{1, 0}, {1, 0}, {1, 0}, {1, 0}, {3, 0}, {2, 0}},
        {{1, 0}, {1, 0}, {1, 1}, {1, 0}, {2, 0}, {3, 0}},
    };
    const Grade outsider[6] = {{1, 1}, {2, 0}, {1, 2}, {1, 0}, {0, 1}, {0, 2}};
    int cells = 0;
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            if (i == j)
                continue;
            ++cells;
            pr.expect(grade(Code::parse(codes[i]), Code::parse(codes[j])) == table[i][j],
                      std::string(codes[i]) + " vs " + codes[j]);
        }
        ++cells;
        pr.expect(grade(Code::parse(codes[i]), Code::parse("162")) == outsider[i], std::string(codes[i]) + " vs 162");
    }
    std::uint64_t pairs = 0;
    int instances = 0;
    for (int p = 1; p <= kMaxPegs; ++p) {
        for (int c = 1; c <= kMaxColors; ++c) {
            if (checked_power(static_cast<std::uint64_t>(c), p) > 4096)
                break;
            ++instances;
            const auto all = enumerate_codes(Params::standard(p, c), Alphabet::secret);
            for (std::size_t i = 0; i < all.size(); ++i) {
                for (std::size_t j = i; j < all.size(); ++j) {
                    const Grade x = grade(all[i], all[j]);
                    const Grade y = grade(all[j], all[i]);
                    ++pairs;
                    if (x != y || (x.black == p - 1 && x.white == 1))
                        pr.expect(false, all[i].to_string() + " vs " + all[j].to_string());
                }
            }
        }
    }
    // independent count on a smaller range
    for (int p = 1; p <= 6; ++p)
        for (int c = 1; c <= 8; ++c) {
            if (checked_power(static_cast<std::uint64_t>(c), p) > 1296)
                break;
            const auto all = enumerate_codes(Params::standard(p, c), Alphabet::secret);
            const auto ref = oracle::all_codes(p, c);
            for (std::size_t i = 0; i < all.size(); ++i)
                for (std::size_t j = 0; j < all.size(); ++j) {
                    const Grade x = grade(all[i], all[j]);
                    if (std::pair{x.black, x.white} != oracle::grade(ref[i], ref[j]))
                        pr.expect(false, "oracle disagrees on " + all[i].to_string() + " vs " + all[j].to_string());
                }
        }
    report(1, "grading exactness", pr.ok(),
           pr.summary(std::to_string(cells) + " table cells; symmetry and no (p-1,1) over " + std::to_string(pairs) +
                      " pairs in " + std::to_string(instances) + " games"),
           seconds_since(t0));
}

// ---- 2 -------------------------------------------------------------------

void counting()
{
    const auto t0 = Clock::now();
    const Counts n = combinatorics(Params::standard(4, 7));
    const ColorCensus cc = color_census(Params::standard(4, 7));
    Problems pr;
    pr.expect(n.code_count == 2401 && n.grade_count == 14,
              "combinatorics " + std::to_string(n.code_count) + "," + std::to_string(n.grade_count));
    pr.expect(cc.class_count == std::vector<std::uint64_t>{7, 294, 1260, 840}, "census");
    report(2, "counting", pr.ok(), pr.summary("(2401, 14), census [7, 294, 1260, 840]"), seconds_since(t0));
}

// ---- 3 and 8 -------------------------------------------------------------

void closed_forms()
{
    const auto t0 = Clock::now();
    Problems pr;
    for (int c = 2; c <= 6; ++c) {
        const SolveOutcome &s = optimum(Mode::full, 2, c);
        const ClosedForm cf = closed_form(2, c);
        pr.expect(cf.expected && *cf.expected == s.stats.expected(), "E(2," + std::to_string(c) + ")");
        pr.expect(cf.worst && *cf.worst == s.stats.worst,
                  "W(2," + std::to_string(c) + ") solver " + std::to_string(s.stats.worst));
    }
    const std::int64_t row[] = {8, 21, 45, 81, 132, 198, 284, 388};
    std::string got;
    for (int c = 2; c <= 9; ++c) {
        const auto total = optimum(Mode::full, 2, c).stats.total;
        got += (c > 2 ? "," : "") + std::to_string(total);
        pr.expect(total == row[c - 2], "L(2," + std::to_string(c) + ")=" + std::to_string(total));
    }
    report(3, "closed forms vs solver", pr.ok(), pr.summary("E, W for c=2..6; L row " + got), seconds_since(t0));
}

void small_optima()
{
    const auto t0 = Clock::now();
    Problems pr;
    const std::tuple<int, int, std::int64_t> expect[] = {{3, 2, 18}, {3, 3, 73}, {3, 4, 206}, {3, 5, 451},
                                                         {3, 6, 854}, {4, 4, 905}, {2, 2, 8},  {2, 3, 21},
                                                         {2, 4, 45},  {2, 5, 81},  {2, 6, 132}, {2, 7, 198},
                                                         {2, 8, 284}, {2, 9, 388}};
    for (auto [p, c, l] : expect) {
        const auto total = optimum(Mode::full, p, c).stats.total;
        pr.expect(total == l, name(Mode::full, p, c) + "=" + std::to_string(total));
    }
    report(8, "optimal small instances", pr.ok(), pr.summary("MM(3,2..6), MM(4,4) and the MM(2,c) row"),
           seconds_since(t0));
}

// ---- 4 to 7 --------------------------------------------------------------

struct HeuristicRow
{
    Policy policy;
    TieOrder tie;
    EntropyTies ties;
    const char *first; // forced first guess, or nullptr
    std::int64_t total;
    int worst;          // 0 when not stated
    const char *expect; // expected first guess, or nullptr
};

bool run_row(Problems &pr, const Game &game, const HeuristicRow &row, std::string &line)
{
    RolloutOptions o;
    o.tie = row.tie;
    o.entropy_ties = row.ties;
    o.build_tree = false;
    if (row.first != nullptr)
        o.first_guess = Code::parse(row.first);
    const RolloutResult r = rollout(game, row.policy, o);
    const bool ok = r.stats.total == row.total && (row.worst == 0 || r.stats.worst == row.worst) &&
                    (row.expect == nullptr || r.first_guess == Code::parse(row.expect));
    std::string label = to_string(row.policy);
    if (row.policy == Policy::entropy)
        label += "/" + to_string(row.ties) + "/" + (row.tie == TieOrder::first ? "first" : "last");
    line += (line.empty() ? "" : ", ") + label + " " + std::to_string(r.stats.total) + "/W" +
            std::to_string(r.stats.worst) + "/" + r.first_guess.to_string();
    pr.expect(ok, label + " gave " + stats_text(r.stats) + " first " + r.first_guess.to_string() + ", want L=" +
                      std::to_string(row.total) + (row.worst ? " W=" + std::to_string(row.worst) : "") +
                      (row.expect ? std::string(" first ") + row.expect : ""));
    return ok;
}

void table3()
{
    const auto t0 = Clock::now();
    const Game game(Params::standard(4, 6));
    Problems pr;
    std::string line;
    const HeuristicRow rows[] = {
        {Policy::max_size, TieOrder::first, EntropyTies::tolerant, nullptr, 5801, 5, "1122"},
        {Policy::expected_size, TieOrder::first, EntropyTies::tolerant, nullptr, 5696, 0, "1123"},
        {Policy::most_parts, TieOrder::first, EntropyTies::tolerant, nullptr, 5668, 0, "1123"},
    };
    for (const auto &row : rows)
        run_row(pr, game, row, line);
    // either documented entropy run satisfies the criterion
    Problems entropy;
    std::string eline;
    const bool first = run_row(entropy, game,
                               {Policy::entropy, TieOrder::first, EntropyTies::strict, nullptr, 5723, 0, nullptr}, eline);
    const bool last = run_row(entropy, game,
                              {Policy::entropy, TieOrder::last, EntropyTies::tolerant, nullptr, 5722, 0, nullptr}, eline);
    pr.expect(first || last, "entropy: " + eline);
    report(4, "heuristics MM(4,6)", pr.ok(), pr.summary(line + ", " + eline), seconds_since(t0));
}

void consistency_rows(Problems &pr, const Game &game, std::optional<Code> first, std::int64_t total, int worst,
                      std::string &line)
{
    const RolloutResult r = consistency_rollout(game, first, false);
    line += (line.empty() ? "" : ", ") + std::string("consistency ") + r.first_guess.to_string() + " " +
            std::to_string(r.stats.total) + "/W" + std::to_string(r.stats.worst);
    pr.expect(r.stats.total == total && r.stats.worst == worst,
              "consistency " + r.first_guess.to_string() + " gave " + stats_text(r.stats));
}

void table4()
{
    const auto t0 = Clock::now();
    const Game game(Params::standard(4, 7));
    Problems pr;
    std::string line;
    consistency_rows(pr, game, Code::parse("4567"), 12265, 8, line);
    const HeuristicRow rows[] = {
        {Policy::max_size, TieOrder::first, EntropyTies::tolerant, nullptr, 11613, 6, "1234"},
        {Policy::expected_size, TieOrder::first, EntropyTies::tolerant, nullptr, 11409, 6, "1234"},
        {Policy::entropy, TieOrder::first, EntropyTies::strict, nullptr, 11382, 6, "1234"},
        {Policy::most_parts, TieOrder::first, EntropyTies::tolerant, nullptr, 11388, 6, "1123"},
    };
    for (const auto &row : rows)
        run_row(pr, game, row, line);
    report(5, "heuristics MM(4,7)", pr.ok(), pr.summary(line), seconds_since(t0));
}

void table5()
{
    const auto t0 = Clock::now();
    const Game game(Params::standard(5, 8), GameOptions{false});
    Problems pr;
    std::string line;
    consistency_rows(pr, game, Code::parse("45678"), 195633, 10, line);
    const HeuristicRow rows[] = {
        {Policy::max_size, TieOrder::first, EntropyTies::tolerant, nullptr, 183966, 7, "11234"},
        {Policy::expected_size, TieOrder::first, EntropyTies::tolerant, nullptr, 180287, 7, "11234"},
        {Policy::entropy, TieOrder::first, EntropyTies::strict, nullptr, 179879, 8, "11234"},
        {Policy::most_parts, TieOrder::first, EntropyTies::tolerant, nullptr, 181834, 9, "11223"},
    };
    for (const auto &row : rows)
        run_row(pr, game, row, line);
    report(6, "heuristics MM(5,8)", pr.ok(), pr.summary(line), seconds_since(t0));
}

void consistency46()
{
    const auto t0 = Clock::now();
    const Game game(Params::standard(4, 6));
    Problems pr;
    std::string line;
    const RolloutResult plain = consistency_rollout(game, std::nullopt, false);
    pr.expect(plain.first_guess == Code::parse("1111"), "first guess " + plain.first_guess.to_string());
    consistency_rows(pr, game, std::nullopt, 7471, 9, line);
    consistency_rows(pr, game, Code::parse("1122"), 6508, 8, line);
    consistency_rows(pr, game, Code::parse("3456"), 6045, 7, line);
    report(7, "consistency MM(4,6)", pr.ok(), pr.summary(line), seconds_since(t0));
}

// ---- 9 to 12 -------------------------------------------------------------

void medium()
{
    const auto t0 = Clock::now();
    const SolveOutcome &s = optimum(Mode::full, 4, 6);
    const std::string e = format_decimal(s.stats.total, s.stats.secrets);
    const bool ok = s.stats.total == 5625 && e == "4.340" && s.stats.worst == 6;
    report(9, "optimal MM(4,6)", ok,
           "L=" + std::to_string(s.stats.total) + " E=" + e + " W=" + std::to_string(s.stats.worst) + " first " +
               s.first_guess.to_string(),
           seconds_since(t0));
}

void possible_mode()
{
    const auto t0 = Clock::now();
    Problems pr;
    std::string line;
    for (auto [p, c, l] : {std::tuple{2, 6, 134}, std::tuple{3, 4, 206}, std::tuple{3, 6, 864}, std::tuple{4, 6, 5660}}) {
        const auto total = optimum(Mode::possible, p, c).stats.total;
        line += (line.empty() ? "" : ", ") + name(Mode::possible, p, c) + "=" + std::to_string(total);
        pr.expect(total == l, name(Mode::possible, p, c) + "=" + std::to_string(total));
    }
    report(10, "possible-only mode", pr.ok(), pr.summary(line), seconds_since(t0));
}

void extended_mode()
{
    const auto t0 = Clock::now();
    Problems pr;
    std::string line;
    for (auto [p, c, l] : {std::tuple{4, 2, 40}, std::tuple{5, 2, 91}}) {
        const auto total = optimum(Mode::extended, p, c).stats.total;
        line += (line.empty() ? "" : ", ") + name(Mode::extended, p, c) + "=" + std::to_string(total);
        pr.expect(total == l, name(Mode::extended, p, c) + "=" + std::to_string(total));
    }
    for (int c = 2; c <= 6; ++c) {
        const auto e = optimum(Mode::extended, 3, c).stats.total;
        const auto f = optimum(Mode::full, 3, c).stats.total;
        pr.expect(e == f, name(Mode::extended, 3, c) + "=" + std::to_string(e) + " vs " + std::to_string(f));
    }
    for (int p = 1; p <= kMaxPegs; ++p) {
        const auto total = optimum(Mode::extended, p, 1).stats.total;
        pr.expect(total == 1, name(Mode::extended, p, 1) + "=" + std::to_string(total));
    }
    report(11, "extended mode", pr.ok(), pr.summary(line + ", MMe(3,c)=MM(3,c) for c=2..6, MMe(p,1)=1 for p=1..10"),
           seconds_since(t0));
}

void flagship()
{
    const auto t0 = Clock::now();
    const SolveOutcome &s = optimum(Mode::full, 4, 7);
    const bool ok = s.stats.total == 11228 && s.stats.worst == 6 && s.first_guess == Code::parse("1123") &&
                    s.stats.found_at == std::vector<std::int64_t>{1, 8, 78, 717, 1473, 124};
    report(12, "optimal MM(4,7)", ok,
           stats_text(s.stats) + " f=" + s.stats.histogram_text() + " first " + s.first_guess.to_string(),
           seconds_since(t0));
}

// ---- 13 to 15 ------------------------------------------------------------

struct OracleRun
{
    Problems equivalence;
    Problems bounds;
    std::size_t instances = 0;
    std::size_t nodes = 0;
    std::size_t prunes = 0;
    double secs = 0;
    std::string slowest;
    double slowest_secs = 0;
};

std::int64_t check_subtree(oracle::BruteForce &brute, const Game &game, const std::vector<oracle::Code> &secrets,
                           const StrategyNode &node, const std::vector<int> &set, const BoundTables &tables,
                           const std::string &where, OracleRun &run)
{
    std::map<std::pair<int, int>, std::vector<int>> parts;
    oracle::Code guess;
    for (int i = 0; i < node.guess.size(); ++i)
        guess.push_back(node.guess[i]);
    for (int s : set)
        parts[oracle::grade(guess, secrets[static_cast<std::size_t>(s)])].push_back(s);
    std::int64_t total = static_cast<std::int64_t>(set.size());
    for (auto &[g, part] : parts) {
        if (g.first == game.pegs())
            continue;
        const StrategyNode *child = node.child({g.first, g.second});
        if (child == nullptr) {
            run.bounds.expect(false, where + ": missing branch");
            return -1;
        }
        total += check_subtree(brute, game, secrets, *child, part, tables, where, run);
    }
    const std::int64_t best = brute.cost(set);
    const std::int64_t bound = lower_bound(static_cast<std::int64_t>(set.size()), game.grade_count(), tables);
    ++run.nodes;
    run.bounds.expect(bound <= best, where + ": bound " + std::to_string(bound) + " above optimum " +
                                         std::to_string(best) + " at " + node.guess.to_string());
    // an optimal tree is optimal below every node as well
    run.bounds.expect(total == best, where + ": subtree at " + node.guess.to_string() + " costs " +
                                         std::to_string(total) + ", optimum " + std::to_string(best));
    return total;
}

constexpr double kOracleLimitSecs = 600;

OracleRun oracle_equivalence()
{
    const auto t0 = Clock::now();
    OracleRun run;
    for (Mode mode : {Mode::full, Mode::possible, Mode::extended}) {
        for (auto [p, c] : oracle_instances(mode)) {
            const Game game(params_for(mode, p, c));
            oracle::BruteForce brute(p, c, oracle_mode(mode));
            const auto secrets = oracle::all_codes(p, c);

            const auto t1 = Clock::now();
            std::vector<PruneEvent> events;
            auto collect = [&](const PruneEvent &e) {
                if (events.size() < 200)
                    events.push_back(e);
            };
            const bool fresh = solved.count({static_cast<int>(mode), p, c}) == 0;
            const SolveOutcome &s = optimum(mode, p, c, collect);
            if (!fresh) {
                SolveConfig config;
                config.mode = mode;
                config.on_prune = collect;
                solve(p, c, config);
            }
            const std::int64_t want = brute.total();
            ++run.instances;
            run.equivalence.expect(s.stats.total == want, name(mode, p, c) + " solver " + std::to_string(s.stats.total) +
                                                               " oracle " + std::to_string(want));

            const BoundTables tables = build_tables(game.grade_count());
            std::vector<int> all(secrets.size());
            for (std::size_t i = 0; i < all.size(); ++i)
                all[i] = static_cast<int>(i);
            check_subtree(brute, game, secrets, s.tree->root, all, tables, name(mode, p, c), run);

            for (const PruneEvent &e : events) {
                std::map<std::pair<int, int>, std::vector<int>> parts;
                oracle::Code guess;
                const Code &g = game.guess_code(e.guess);
                for (int i = 0; i < g.size(); ++i)
                    guess.push_back(g[i]);
                for (SecretIndex x : e.candidates)
                    parts[oracle::grade(guess, secrets[x])].push_back(static_cast<int>(x));
                std::int64_t actual = static_cast<std::int64_t>(e.candidates.size());
                for (auto &[gr, part] : parts)
                    if (gr.first != p)
                        actual += brute.cost(part);
                ++run.prunes;
                run.bounds.expect(actual >= e.predicted,
                                  name(mode, p, c) + ": pruned " + g.to_string() + " predicted " +
                                      std::to_string(e.predicted) + " but costs " + std::to_string(actual));
            }
            const double took = seconds_since(t1);
            if (took > run.slowest_secs) {
                run.slowest_secs = took;
                run.slowest = name(mode, p, c);
            }
        }
    }
    run.secs = seconds_since(t0);
    return run;
}

void toggles(bool slow)
{
    const auto t0 = Clock::now();
    Problems pr;
    std::size_t runs = 0;
    std::size_t deferred = 0;
    const char *names[] = {"symmetry", "shortcuts", "grade table", "k-factor"};
    for (Mode mode : {Mode::full, Mode::possible, Mode::extended}) {
        for (auto [p, c] : oracle_instances(mode)) {
            const std::int64_t want = optimum(mode, p, c).stats.total;
            for (int t = 0; t < 4; ++t) {
                // without color symmetry these take minutes to hours each
                const bool heavy = t == 0 && ((p == 2 && c >= 12) || p == 8);
                if (heavy && !slow) {
                    ++deferred;
                    continue;
                }
                SolveConfig config;
                config.mode = mode;
                config.symmetry = t != 0;
                config.shortcuts = t != 1;
                config.grade_table = t != 2;
                config.k_factor = t != 3;
                const auto total = solve(p, c, config).stats.total;
                ++runs;
                pr.expect(total == want, name(mode, p, c) + " without " + names[t] + ": " + std::to_string(total) +
                                             " vs " + std::to_string(want));
            }
        }
    }
    std::string detail = std::to_string(runs) + " solves agree";
    if (deferred > 0)
        detail += "; " + std::to_string(deferred) + " symmetry-off solves deferred to --slow";
    report(14, "toggle invariance", pr.ok(), pr.summary(detail), seconds_since(t0));
    if (deferred > 0)
        skip(14, "toggle invariance (heavy part)",
             "symmetry off for MM(2,12..16) and MM(8,2) in all modes; run with --slow");
}

void bounds(const OracleRun &run)
{
    const auto t0 = Clock::now();
    Problems pr;
    for (int factor = 2; factor <= 20; ++factor) {
        const BoundTables tables = build_tables(factor, 13);
        const auto &t = tables.leaves(factor);
        const auto &s = tables.correction(factor);
        for (int q = 0; q <= 12 && q < static_cast<int>(t.size()); ++q) {
            std::int64_t tq = 0, sq = 0, power = 1;
            for (int i = 1; i <= q; ++i) {
                tq += power;
                sq += static_cast<std::int64_t>(q - i + 1) * power;
                power *= factor - 1;
            }
            pr.expect(t[static_cast<std::size_t>(q)] == tq && s[static_cast<std::size_t>(q)] == sq,
                      "factor " + std::to_string(factor) + " q=" + std::to_string(q));
        }
    }
    const std::int64_t lb = lower_bound(14, 14, build_tables(14));
    pr.expect(lb == 27, "lower_bound(14, 14) = " + std::to_string(lb));
    for (const auto &item : run.bounds.items)
        pr.expect(false, item);
    report(15, "lower bounds", pr.ok(),
           pr.summary("recursion = sums for factors 2..20, q<=12; lower_bound(14,14)=27; bound <= optimum and "
                      "subtree optimal at " +
                      std::to_string(run.nodes) + " tree nodes; " + std::to_string(run.prunes) +
                      " pruned guesses cost at least their prediction"),
           seconds_since(t0) + run.secs);
}

// ---- 16 and 17 -----------------------------------------------------------

void symmetry_fixtures()
{
    const auto t0 = Clock::now();
    Problems pr;
    const Params p47 = Params::standard(4, 7);
    const auto codes47 = enumerate_codes(p47, Alphabet::guess);
    const ColorState init47 = ColorState::initial(p47);
    std::map<std::string, std::size_t> got;
    for (const auto &r : representatives(codes47, init47))
        got[r.code.to_string()] = r.class_size;
    const std::map<std::string, std::size_t> want{{"1111", 7}, {"1112", 168}, {"1122", 126}, {"1123", 1260}, {"1234", 840}};
    pr.expect(got == want, "MM(4,7) first level");
    // the three-color class is listed under 1223 elsewhere; it is the same class
    pr.expect(signature(Code::parse("1223"), init47) == signature(Code::parse("1123"), init47), "1223 ~ 1123");

    const Params p34 = Params::standard(3, 4);
    const auto codes34 = enumerate_codes(p34, Alphabet::guess);
    std::vector<std::string> first34;
    for (const auto &r : representatives(codes34, ColorState::initial(p34)))
        first34.push_back(r.code.to_string());
    pr.expect(first34 == std::vector<std::string>{"111", "112", "123"}, "MM(3,4) first level");
    const auto after =
        representatives(codes34, update_state(ColorState::initial(p34), Code::parse("112"), Grade{0, 0}));
    pr.expect(after.size() == 11, "MM(3,4) after 112 -> (0,0): " + std::to_string(after.size()));
    report(16, "symmetry fixtures", pr.ok(),
           pr.summary("{1111:7, 1112:168, 1122:126, 1123(=1223):1260, 1234:840}; {111,112,123}; 11 after 112/(0,0)"),
           seconds_since(t0));
}

void verification(const std::string &fixture)
{
    const auto t0 = Clock::now();
    Problems pr;
    for (const auto &item : replay_problems.items)
        pr.expect(false, item);
    const StrategyTree fig1 = tree_from_json(load_text(fixture));
    const TreeStats st = verify(fig1);
    pr.expect(st.paths.total == 18 && st.paths.found_at == std::vector<std::int64_t>{1, 4, 3} && st.paths.worst == 3,
              "MM(3,2) fixture tree replays to " + stats_text(st.paths));
    pr.expect(*optimum(Mode::full, 3, 2).tree == fig1, "solver MM(3,2) tree differs from the fixture");
    report(17, "verification independence", pr.ok(),
           pr.summary(std::to_string(replayed_trees) + " emitted trees replay to the reported L/E/W/f; MM(3,2) "
                                                        "fixture gives L=18 f=(1/4/3)"),
           seconds_since(t0));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Acceptance checks for the Mastermind solver"};
    bool slow = false;
    bool want_flagship = false;
    std::string fixture = MASTERMIND_TEST_DATA "/fig1_mm32.json";
    app.add_flag("--slow", slow, "Also run the long MM(5,8) table and heavy symmetry-off solves");
    app.add_flag("--flagship", want_flagship, "Also solve MM(4,7) exactly (no time bound)");
    app.add_option("--fixture", fixture, "MM(3,2) strategy tree fixture");
    std::vector<int> only;
    app.add_option("--only", only, "Run just these criteria (15 needs 13)")->check(CLI::Range(1, 17));
    CLI11_PARSE(app, argc, argv);
    auto want = [&](int n) { return only.empty() || std::find(only.begin(), only.end(), n) != only.end(); };

    const auto t0 = Clock::now();
    try {
        if (want(1))
            grading();
        if (want(2))
            counting();
        if (want(3))
            closed_forms();
        if (want(4))
            table3();
        if (want(5))
            table4();
        if (slow && want(6))
            table5();
        else if (want(6))
            skip(6, "heuristics MM(5,8)", "slow suite; run with --slow");
        if (want(7))
            consistency46();
        if (want(8))
            small_optima();
        if (want(9))
            medium();
        if (want(10))
            possible_mode();
        if (want(11))
            extended_mode();
        if (want_flagship && want(12))
            flagship();
        else if (want(12))
            skip(12, "optimal MM(4,7)", "opt-in long run; use --flagship");
        std::optional<OracleRun> run;
        if (want(13) || want(15)) {
            run = oracle_equivalence();
            char timing[160];
            std::snprintf(timing, sizeof timing, "; slowest %s %.0f s; limit %.0f s", run->slowest.c_str(),
                          run->slowest_secs, kOracleLimitSecs);
            report(13, "oracle equivalence", run->equivalence.ok() && run->secs < kOracleLimitSecs,
                   run->equivalence.summary(std::to_string(run->instances) +
                                            " instances (c^p <= 256, all modes) match" + timing),
                   run->secs);
        }
        if (want(14))
            toggles(slow);
        if (want(15))
            bounds(*run);
        if (want(16))
            symmetry_fixtures();
        if (want(17))
            verification(fixture);
    } catch (const std::exception &e) {
        std::printf("FAIL error: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d failing criteria (%.1f s)\n", failures == 0 ? "OK" : "FAILED", failures, seconds_since(t0));
    return failures == 0 ? 0 : 1;
}
