#include "mastermind/strategy.hpp"

#include "mastermind/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace mastermind {

using json = nlohmann::json;

void PathStats::record(int guesses, std::int64_t count)
{
    if (guesses < 1 || count <= 0)
        return;
    if (found_at.size() < static_cast<std::size_t>(guesses))
        found_at.resize(static_cast<std::size_t>(guesses), 0);
    found_at[static_cast<std::size_t>(guesses - 1)] += count;
    total += guesses * count;
    secrets += count;
    worst = std::max(worst, guesses);
}

void PathStats::merge(const PathStats &other)
{
    for (std::size_t i = 0; i < other.found_at.size(); ++i)
        record(static_cast<int>(i + 1), other.found_at[i]);
}

std::string PathStats::histogram_text() const
{
    std::string s = "(";
    for (std::size_t i = 0; i < found_at.size(); ++i) {
        if (i > 0)
            s += "/";
        s += std::to_string(found_at[i]);
    }
    return s + ")";
}

const StrategyNode *StrategyNode::child(Grade g) const noexcept
{
    auto it = std::lower_bound(children.begin(), children.end(), g,
                               [](const StrategyNode &n, Grade x) { return n.via < x; });
    return it != children.end() && it->via == g ? &*it : nullptr;
}

StrategyNode &StrategyNode::add_child(Grade g, Code code)
{
    auto it = std::lower_bound(children.begin(), children.end(), g,
                               [](const StrategyNode &n, Grade x) { return n.via < x; });
    if (it != children.end() && it->via == g)
        fail(ErrorCode::invalid_argument, "duplicate branch " + g.to_string());
    it = children.insert(it, StrategyNode{g, code, {}});
    return *it;
}

std::size_t StrategyNode::node_count() const noexcept
{
    std::size_t n = 1;
    for (const auto &c : children)
        n += c.node_count();
    return n;
}

int minimum_worst_case(std::int64_t n, int pegs)
{
    // T[d] = 1 + (G-1) T[d-1]
    const std::int64_t branch = grade_count(pegs) - 1;
    std::int64_t t = 0;
    int d = 0;
    while (t < n) {
        t = 1 + branch * t;
        ++d;
    }
    return d;
}

// ---------------------------------------------------------------------------
// Verification

TreeStats verify(const StrategyTree &tree)
{
    return verify(tree, tree.params());
}

TreeStats verify(const StrategyTree &tree, const Params &params)
{
    params.validate();
    if (tree.pegs != params.pegs || tree.colors != params.secret_colors ||
        tree.params().guess_colors != params.guess_colors)
        fail(ErrorCode::verify, "tree header does not match the game parameters");

    const auto secrets = enumerate_codes(params, Alphabet::secret);
    const Grade win{params.pegs, 0};
    const int cap = std::max<int>(64, static_cast<int>(std::min<std::size_t>(secrets.size(), 1u << 20)) + 1);

    // guesses must be well formed before replay
    std::function<void(const StrategyNode &)> check = [&](const StrategyNode &n) {
        if (n.guess.size() != params.pegs || n.guess.max_color() > params.guess_colors)
            fail(ErrorCode::verify, "guess '" + n.guess.to_string() + "' is not a code of this game");
        for (const auto &c : n.children) {
            if (!is_valid_grade(c.via, params.pegs) || c.via == win)
                fail(ErrorCode::verify, "invalid branch grade " + c.via.to_string() + " below guess " +
                                            n.guess.to_string());
            check(c);
        }
    };
    check(tree.root);

    TreeStats stats;
    for (const Code &secret : secrets) {
        const StrategyNode *node = &tree.root;
        std::string path;
        for (int depth = 1;; ++depth) {
            if (depth > cap)
                fail(ErrorCode::verify, "path for secret " + secret.to_string() + " does not terminate");
            const Grade g = grade(node->guess, secret);
            path += node->guess.to_string();
            if (g == win) {
                stats.paths.record(depth);
                ++stats.secrets_covered;
                break;
            }
            path += "->(" + g.to_string() + ")->";
            node = node->child(g);
            if (node == nullptr)
                fail(ErrorCode::verify,
                     "secret " + secret.to_string() + " falls off the tree: missing branch after " + path);
        }
    }

    if (tree.claimed_worst && *tree.claimed_worst < minimum_worst_case(stats.secrets_covered, params.pegs))
        fail(ErrorCode::verify, "header claims W=" + std::to_string(*tree.claimed_worst) +
                                    ", below the minimum possible " +
                                    std::to_string(minimum_worst_case(stats.secrets_covered, params.pegs)));
    if (tree.claimed_total && *tree.claimed_total != stats.paths.total)
        stats.warnings.push_back("header claims L=" + std::to_string(*tree.claimed_total) + ", replay gives L=" +
                                 std::to_string(stats.paths.total));
    if (tree.claimed_worst && *tree.claimed_worst != stats.paths.worst)
        stats.warnings.push_back("header claims W=" + std::to_string(*tree.claimed_worst) + ", replay gives W=" +
                                 std::to_string(stats.paths.worst));
    return stats;
}

// ---------------------------------------------------------------------------
// tree-json

namespace {

json node_to_json(const StrategyNode &n)
{
    json j;
    j["guess"] = n.guess.to_string();
    if (!n.children.empty()) {
        json children = json::object();
        for (const auto &c : n.children)
            children[c.via.to_string()] = node_to_json(c);
        j["children"] = std::move(children);
    }
    return j;
}

[[noreturn]] void schema_error(const std::string &where, const std::string &what)
{
    fail(ErrorCode::parse, "tree-json " + where + ": " + what);
}

StrategyNode node_from_json(const json &j, const std::string &where, int pegs, Grade via)
{
    if (!j.is_object())
        schema_error(where, "node must be an object");
    auto g = j.find("guess");
    if (g == j.end() || !g->is_string())
        schema_error(where, "missing string field 'guess'");
    StrategyNode node;
    node.via = via;
    try {
        node.guess = Code::parse(g->get<std::string>());
    } catch (const Error &e) {
        schema_error(where + "/guess", e.what());
    }
    if (node.guess.size() != pegs)
        schema_error(where + "/guess", "code length differs from pegs");
    auto ch = j.find("children");
    if (ch == j.end())
        return node;
    if (!ch->is_object())
        schema_error(where + "/children", "must be an object keyed by grades");
    for (auto it = ch->begin(); it != ch->end(); ++it) {
        const std::string at = where + "/children/" + it.key();
        Grade grade_key;
        try {
            grade_key = Grade::parse(it.key());
        } catch (const Error &e) {
            schema_error(at, e.what());
        }
        if (!is_valid_grade(grade_key, pegs))
            schema_error(at, "not a valid grade for " + std::to_string(pegs) + " pegs");
        if (grade_key.black == pegs)
            schema_error(at, "the winning answer terminates a path and cannot have a subtree");
        auto child = node_from_json(it.value(), at, pegs, grade_key);
        node.add_child(grade_key, child.guess).children = std::move(child.children);
    }
    return node;
}

} // namespace

std::string to_json(const StrategyTree &tree)
{
    json j;
    j["format_version"] = StrategyTree::kFormatVersion;
    j["pegs"] = tree.pegs;
    j["colors"] = tree.colors;
    j["mode"] = to_string(tree.mode);
    if (tree.claimed_total)
        j["L"] = *tree.claimed_total;
    if (tree.claimed_worst)
        j["W"] = *tree.claimed_worst;
    j["root"] = node_to_json(tree.root);
    return j.dump(1) + "\n";
}

StrategyTree tree_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorCode::parse, "tree-json: malformed document at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object())
        schema_error("/", "document must be an object");

    auto integer = [&](const char *key, bool required) -> std::optional<std::int64_t> {
        auto it = j.find(key);
        if (it == j.end()) {
            if (required)
                schema_error("/", std::string("missing field '") + key + "'");
            return std::nullopt;
        }
        if (!it->is_number_integer())
            schema_error(std::string("/") + key, "must be an integer");
        return it->get<std::int64_t>();
    };

    const auto version = integer("format_version", true);
    if (*version != StrategyTree::kFormatVersion)
        schema_error("/format_version", "unsupported version " + std::to_string(*version));

    StrategyTree tree;
    tree.pegs = static_cast<int>(*integer("pegs", true));
    tree.colors = static_cast<int>(*integer("colors", true));
    auto mode = j.find("mode");
    if (mode != j.end()) {
        if (!mode->is_string())
            schema_error("/mode", "must be a string");
        try {
            tree.mode = parse_mode(mode->get<std::string>());
        } catch (const Error &e) {
            schema_error("/mode", e.what());
        }
    }
    try {
        tree.params().validate();
    } catch (const Error &e) {
        schema_error("/", e.what());
    }
    tree.claimed_total = integer("L", false);
    if (auto w = integer("W", false))
        tree.claimed_worst = static_cast<int>(*w);
    auto root = j.find("root");
    if (root == j.end())
        schema_error("/", "missing field 'root'");
    tree.root = node_from_json(*root, "/root", tree.pegs, Grade{});
    return tree;
}

// ---------------------------------------------------------------------------
// dot

std::string to_dot(const StrategyTree &tree)
{
    const Params params = tree.params();
    const auto secrets = enumerate_codes(params, Alphabet::secret);
    const Grade win{params.pegs, 0};

    // nodes where some secret is found
    std::vector<const StrategyNode *> winners;
    for (const Code &secret : secrets) {
        const StrategyNode *node = &tree.root;
        while (node != nullptr) {
            const Grade g = grade(node->guess, secret);
            if (g == win) {
                winners.push_back(node);
                break;
            }
            node = node->child(g);
        }
    }
    std::sort(winners.begin(), winners.end());

    std::ostringstream out;
    out << "digraph strategy {\n";
    out << "  node [shape=circle];\n";
    int next_id = 0;
    std::function<int(const StrategyNode &)> emit = [&](const StrategyNode &n) {
        const int id = next_id++;
        out << "  n" << id << " [label=\"" << n.guess.to_string() << "\"];\n";
        if (std::binary_search(winners.begin(), winners.end(), &n)) {
            out << "  w" << id << " [shape=point];\n";
            out << "  n" << id << " -> w" << id << " [label=\"" << win.to_string() << "\"];\n";
        }
        for (const auto &c : n.children) {
            const int cid = emit(c);
            out << "  n" << id << " -> n" << cid << " [label=\"" << c.via.to_string() << "\"];\n";
        }
        return id;
    };
    emit(tree.root);
    out << "}\n";
    return out.str();
}

void save_text(const std::string &path, const std::string &text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::io, "cannot open '" + path + "' for writing");
    f << text;
    if (!f)
        fail(ErrorCode::io, "failed writing '" + path + "'");
}

std::string load_text(const std::string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        fail(ErrorCode::io, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace mastermind
