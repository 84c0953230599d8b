// mastermind -- command-line front end. Talks to the library through the C API only.

#include "mastermind/mastermind.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Status with the failing call's message, turned into an exit code at the top.
struct Failure
{
    mm_status status;
    std::string message;
};

void check(mm_status status)
{
    if (status != MM_OK)
        throw Failure{status, mm_last_error()};
}

struct ResultDeleter
{
    void operator()(mm_result *r) const { mm_result_destroy(r); }
};
struct TreeDeleter
{
    void operator()(mm_tree *t) const { mm_tree_destroy(t); }
};
struct ConfigDeleter
{
    void operator()(mm_solve_config *c) const { mm_solve_config_destroy(c); }
};
using Result = std::unique_ptr<mm_result, ResultDeleter>;
using Tree = std::unique_ptr<mm_tree, TreeDeleter>;
using Config = std::unique_ptr<mm_solve_config, ConfigDeleter>;

std::string take_string(char *text)
{
    std::string s = text != nullptr ? text : "";
    mm_string_free(text);
    return s;
}

std::string decimal(std::int64_t num, std::int64_t den)
{
    char *out = nullptr;
    check(mm_format_decimal(num, den, 3, &out));
    return take_string(out);
}

std::string histogram(const mm_result *r)
{
    std::vector<std::int64_t> f(mm_result_histogram(r, nullptr, 0));
    mm_result_histogram(r, f.data(), f.size());
    std::string s = "(";
    for (std::size_t i = 0; i < f.size(); ++i)
        s += (i ? "/" : "") + std::to_string(f[i]);
    return s + ")";
}

void print_stats(const mm_result *r)
{
    const std::int64_t total = mm_result_total(r);
    const std::int64_t n = mm_result_secrets(r);
    char *first = nullptr;
    check(mm_result_first_guess(r, &first));
    std::cout << "L=" << total << " E=" << total << '/' << n << '=' << decimal(total, n == 0 ? 1 : n)
              << " W=" << mm_result_worst(r) << " first=" << take_string(first) << '\n';
    std::cout << "f=" << histogram(r) << '\n';
}

void print_warnings(const mm_result *r)
{
    for (std::size_t i = 0; i < mm_result_warning_count(r); ++i)
        std::cerr << "warning: " << mm_result_warning(r, i) << '\n';
}

void emit_tree(mm_result *r, const std::string &path)
{
    if (path.empty())
        return;
    mm_tree *raw = nullptr;
    check(mm_result_take_tree(r, &raw));
    Tree tree(raw);
    check(mm_tree_save(tree.get(), path.c_str(), MM_FORMAT_JSON));
}

mm_mode mode_of(const std::string &text)
{
    mm_mode m{};
    check(mm_parse_mode(text.c_str(), &m));
    return m;
}

struct SolveArgs
{
    int pegs = 0;
    int colors = 0;
    std::string mode = "full";
    std::int64_t upper_bound = 0;
    bool no_symmetry = false;
    bool no_shortcuts = false;
    bool no_grade_table = false;
    bool no_k_factor = false;
    bool no_min_worst = false;
    std::string emit_tree;
    std::string cache;
    int workers = 1;
    bool deterministic = false;
    int max_guesses = 0;
    bool verbose = false;
};

Config make_config(const SolveArgs &a, const std::string &mode, bool want_tree)
{
    mm_solve_config *raw = nullptr;
    check(mm_solve_config_create(&raw));
    Config cfg(raw);
    char *cache = nullptr;
    check(mm_resolve_cache_path(a.cache.c_str(), &cache));
    const std::string cache_path = take_string(cache);
    check(mm_solve_config_set_mode(cfg.get(), mode_of(mode)));
    check(mm_solve_config_set_upper_bound(cfg.get(), a.upper_bound));
    check(mm_solve_config_set_symmetry(cfg.get(), !a.no_symmetry));
    check(mm_solve_config_set_shortcuts(cfg.get(), !a.no_shortcuts));
    check(mm_solve_config_set_grade_table(cfg.get(), !a.no_grade_table));
    check(mm_solve_config_set_k_factor(cfg.get(), !a.no_k_factor));
    check(mm_solve_config_set_minimize_worst(cfg.get(), !a.no_min_worst));
    check(mm_solve_config_set_workers(cfg.get(), a.workers));
    check(mm_solve_config_set_deterministic(cfg.get(), a.deterministic));
    check(mm_solve_config_set_cache_path(cfg.get(), cache_path.c_str()));
    check(mm_solve_config_set_max_guesses(cfg.get(), a.max_guesses));
    check(mm_solve_config_set_want_tree(cfg.get(), want_tree));
    check(mm_solve_config_set_verbose(cfg.get(), a.verbose));
    return cfg;
}

int run_solve(const SolveArgs &a)
{
    Config cfg = make_config(a, a.mode, !a.emit_tree.empty());
    mm_result *raw = nullptr;
    check(mm_solve(a.pegs, a.colors, cfg.get(), &raw));
    Result r(raw);
    print_warnings(r.get());
    print_stats(r.get());
    emit_tree(r.get(), a.emit_tree);
    return kExitOk;
}

struct HeuristicArgs
{
    int pegs = 0;
    int colors = 0;
    std::string policy;
    std::string first_guess;
    std::string tie_order = "first";
    std::string entropy_ties = "tolerant";
    std::string emit_tree;
};

int run_heuristic(const HeuristicArgs &a)
{
    mm_policy policy{};
    check(mm_parse_policy(a.policy.c_str(), &policy));
    const mm_tie_order tie = a.tie_order == "last" ? MM_TIE_LAST : MM_TIE_FIRST;
    const mm_entropy_ties ties = a.entropy_ties == "strict" ? MM_ENTROPY_STRICT : MM_ENTROPY_TOLERANT;
    mm_result *raw = nullptr;
    check(mm_heuristic(a.pegs, a.colors, policy, tie, ties, a.first_guess.empty() ? nullptr : a.first_guess.c_str(),
                       !a.emit_tree.empty(), &raw));
    Result r(raw);
    print_stats(r.get());
    emit_tree(r.get(), a.emit_tree);
    return kExitOk;
}

int run_consistency(int pegs, int colors, const std::string &first, const std::string &tree_path)
{
    mm_result *raw = nullptr;
    check(mm_consistency(pegs, colors, first.empty() ? nullptr : first.c_str(), !tree_path.empty(), &raw));
    Result r(raw);
    print_stats(r.get());
    emit_tree(r.get(), tree_path);
    return kExitOk;
}

Tree load_tree(const std::string &path)
{
    mm_tree *raw = nullptr;
    check(mm_tree_load(path.c_str(), &raw));
    return Tree(raw);
}

int run_verify(const std::string &path)
{
    Tree tree = load_tree(path);
    mm_result *raw = nullptr;
    check(mm_tree_verify(tree.get(), &raw));
    Result r(raw);
    print_warnings(r.get());
    print_stats(r.get());
    std::cout << "verified " << mm_result_secrets(r.get()) << " secrets\n";
    return kExitOk;
}

int run_export(const std::string &path, const std::string &format, const std::string &out)
{
    Tree tree = load_tree(path);
    const mm_format fmt = format == "dot" ? MM_FORMAT_DOT : MM_FORMAT_JSON;
    if (!out.empty()) {
        check(mm_tree_save(tree.get(), out.c_str(), fmt));
        return kExitOk;
    }
    char *text = nullptr;
    check(mm_tree_export(tree.get(), fmt, &text));
    std::cout << take_string(text);
    return kExitOk;
}

struct TablesArgs
{
    SolveArgs solve;
    int pegs_max = 0;
    int colors_max = 0;
    std::uint64_t max_codes = 0;
};

std::string pad(const std::string &s, std::size_t width)
{
    return std::string(width > s.size() ? width - s.size() : 0, ' ') + s;
}

int run_tables(const TablesArgs &a)
{
    const bool extended = a.solve.mode == "extended";
    const int c_min = extended ? 1 : 2;
    std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> cells;
    Config cfg = make_config(a.solve, a.solve.mode, false);
    for (int p = 2; p <= a.pegs_max; ++p) {
        for (int c = c_min; c <= a.colors_max; ++c) {
            std::uint64_t codes = 0, grades = 0;
            check(mm_combinatorics(p, c, &codes, &grades));
            if (a.max_codes != 0 && codes > a.max_codes)
                continue;
            mm_result *raw = nullptr;
            check(mm_solve(p, c, cfg.get(), &raw));
            Result r(raw);
            cells[{p, c}] = {mm_result_total(r.get()), mm_result_secrets(r.get())};
        }
    }
    constexpr std::size_t width = 7;
    auto grid = [&](const char *title, bool averages) {
        std::cout << title << '\n' << pad("p\\c", 4);
        for (int c = c_min; c <= a.colors_max; ++c)
            std::cout << pad(std::to_string(c), width);
        std::cout << '\n';
        for (int p = 2; p <= a.pegs_max; ++p) {
            std::cout << pad(std::to_string(p), 4);
            for (int c = c_min; c <= a.colors_max; ++c) {
                auto it = cells.find({p, c});
                std::string cell;
                if (it != cells.end())
                    cell = averages ? decimal(it->second.first, it->second.second) : std::to_string(it->second.first);
                std::cout << pad(cell, width);
            }
            std::cout << '\n';
        }
    };
    grid("L", false);
    std::cout << '\n';
    grid("E", true);
    return kExitOk;
}

int run_closed_form(int pegs, int colors)
{
    int has_e = 0, has_w = 0, w = 0;
    std::int64_t num = 0, den = 1;
    check(mm_closed_form(pegs, colors, &has_e, &num, &den, &has_w, &w));
    if (!has_e && !has_w) {
        std::cout << "no closed form for MM(" << pegs << ',' << colors << ")\n";
        return kExitFailure;
    }
    if (has_e)
        std::cout << "E=" << num << '/' << den << '=' << decimal(num, den) << '\n';
    if (has_w)
        std::cout << "W=" << w << '\n';
    return kExitOk;
}

void add_size_options(CLI::App *cmd, int &pegs, int &colors)
{
    cmd->add_option("--pegs", pegs, "Number of pegs")->required()->check(CLI::Range(1, 10));
    cmd->add_option("--colors", colors, "Number of colors")->required()->check(CLI::Range(1, 35));
}

void add_search_options(CLI::App *cmd, SolveArgs &a)
{
    cmd->add_option("--mode", a.mode, "full, possible or extended")
        ->check(CLI::IsMember({"full", "possible", "extended"}));
    cmd->add_option("--upper-bound", a.upper_bound, "Known achievable L; only L <= bound is searched");
    cmd->add_flag("--no-symmetry", a.no_symmetry, "Test every guess instead of class representatives");
    cmd->add_flag("--no-shortcuts", a.no_shortcuts, "Disable small-set and zero-answer shortcuts");
    cmd->add_flag("--no-grade-table", a.no_grade_table, "Grade on the fly");
    cmd->add_flag("--no-k-factor", a.no_k_factor, "Use branching factor G everywhere in the lower bound");
    cmd->add_flag("--no-min-worst", a.no_min_worst, "Keep the first optimal tree found, whatever its depth");
    cmd->add_option("--cache", a.cache, "Result cache file (default $MASTERMIND_CACHE)");
    cmd->add_option("--workers", a.workers, "Threads for the first level")->check(CLI::PositiveNumber);
    cmd->add_flag("--deterministic", a.deterministic, "Scheduling-independent tree selection");
    cmd->add_option("--max-guesses", a.max_guesses, "Cap on guesses per secret")->check(CLI::PositiveNumber);
    cmd->add_flag("--verbose", a.verbose, "Search trace on standard error");
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Optimal and heuristic strategies for Mastermind"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mm_version()));

    SolveArgs solve_args;
    auto *solve = app.add_subcommand("solve", "Exact minimum of the expected number of guesses");
    add_size_options(solve, solve_args.pegs, solve_args.colors);
    add_search_options(solve, solve_args);
    solve->add_option("--emit-tree", solve_args.emit_tree, "Write the optimal strategy as JSON");

    HeuristicArgs heur_args;
    auto *heuristic = app.add_subcommand("heuristic", "One-step-ahead heuristic strategy");
    add_size_options(heuristic, heur_args.pegs, heur_args.colors);
    heuristic->add_option("--policy", heur_args.policy, "Scoring policy")
        ->required()
        ->check(CLI::IsMember({"max-size", "expected-size", "entropy", "most-parts"}));
    heuristic->add_option("--first-guess", heur_args.first_guess, "Force the opening guess");
    heuristic->add_option("--tie-order", heur_args.tie_order, "Keep the first or last best guess")
        ->check(CLI::IsMember({"first", "last"}));
    heuristic->add_option("--entropy-ties", heur_args.entropy_ties,
                          "tolerant treats entropies within 1e-9 as equal; strict compares raw doubles")
        ->check(CLI::IsMember({"tolerant", "strict"}));
    heuristic->add_option("--emit-tree", heur_args.emit_tree, "Write the strategy as JSON");

    int cons_pegs = 0, cons_colors = 0;
    std::string cons_first, cons_tree;
    auto *consistency = app.add_subcommand("consistency", "Always play the smallest consistent code");
    add_size_options(consistency, cons_pegs, cons_colors);
    consistency->add_option("--first-guess", cons_first, "Force the opening guess");
    consistency->add_option("--emit-tree", cons_tree, "Write the strategy as JSON");

    std::string verify_path;
    auto *verify = app.add_subcommand("verify", "Replay every secret through a strategy file");
    verify->add_option("--tree", verify_path, "Strategy JSON file")->required();

    std::string export_path, export_format = "json", export_out;
    auto *exporter = app.add_subcommand("export", "Convert a strategy file");
    exporter->add_option("--tree", export_path, "Strategy JSON file")->required();
    exporter->add_option("--format", export_format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
    exporter->add_option("--out", export_out, "Output file (default standard output)");

    TablesArgs tables_args;
    auto *tables = app.add_subcommand("tables", "Grid of optimal L and E values");
    tables->add_option("--pegs-max", tables_args.pegs_max, "Largest peg count")->required()->check(CLI::Range(2, 10));
    tables->add_option("--colors-max", tables_args.colors_max, "Largest color count")
        ->required()
        ->check(CLI::Range(1, 15));
    tables->add_option("--max-codes", tables_args.max_codes, "Skip cells with more codes than this (0: none)");
    add_search_options(tables, tables_args.solve);

    int cf_pegs = 0, cf_colors = 0;
    auto *closed = app.add_subcommand("closed-form", "Known formulas for E and W");
    add_size_options(closed, cf_pegs, cf_colors);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve)
            return run_solve(solve_args);
        if (*heuristic)
            return run_heuristic(heur_args);
        if (*consistency)
            return run_consistency(cons_pegs, cons_colors, cons_first, cons_tree);
        if (*verify)
            return run_verify(verify_path);
        if (*exporter)
            return run_export(export_path, export_format, export_out);
        if (*tables)
            return run_tables(tables_args);
        if (*closed)
            return run_closed_form(cf_pegs, cf_colors);
    } catch (const Failure &f) {
        std::cerr << "error: " << mm_status_name(f.status) << ": " << f.message << '\n';
        return f.status == MM_INVALID_ARGUMENT ? kExitUsage : kExitFailure;
    }
    return kExitUsage;
}
