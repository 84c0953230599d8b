#include "mastermind/symmetry.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <functional>
#include <map>

using namespace mastermind;

namespace {

std::vector<Code> codes_of(const Params &params)
{
    return enumerate_codes(params, Alphabet::guess);
}

std::map<std::string, std::size_t> rep_map(const std::vector<Representative> &reps)
{
    std::map<std::string, std::size_t> out;
    for (const auto &r : reps)
        out[r.code.to_string()] = r.class_size;
    return out;
}

} // namespace

TEST_CASE("color states follow the answers")
{
    const Params p47 = Params::standard(4, 7);
    const ColorState init = ColorState::initial(p47);
    CHECK(init.free_count() == 7);
    CHECK(init.is_initial());

    const ColorState z = update_state(init, Code::parse("1223"), {0, 0});
    for (int c = 1; c <= 3; ++c)
        CHECK(z.is_zero(c));
    for (int c = 4; c <= 7; ++c)
        CHECK(z.is_free(c));

    const ColorState u = update_state(init, Code::parse("1234"), {2, 1});
    for (int c = 1; c <= 4; ++c)
        CHECK(u.at(c) == ColorClass::used);
    for (int c = 5; c <= 7; ++c)
        CHECK(u.is_free(c));

    const ColorState all = update_state(init, Code::parse("1122"), {2, 2});
    CHECK(all.at(1) == ColorClass::used);
    CHECK(all.at(2) == ColorClass::used);
    for (int c = 3; c <= 7; ++c)
        CHECK(all.is_zero(c));

    // zero colors never come back
    const ColorState later = update_state(z, Code::parse("4567"), {1, 1});
    for (int c = 1; c <= 3; ++c)
        CHECK(later.is_zero(c));

    const ColorState ext = ColorState::initial(Params::extended(3, 4));
    CHECK(ext.is_zero(5));
    CHECK(ext.free_count() == 4);
}

TEST_CASE("signatures identify interchangeable guesses")
{
    const Params p47 = Params::standard(4, 7);
    const ColorState init = ColorState::initial(p47);
    CHECK(signature(Code::parse("1111"), init) == signature(Code::parse("7777"), init));
    CHECK(signature(Code::parse("1223"), init) == signature(Code::parse("1123"), init));
    CHECK(signature(Code::parse("1123"), init) != signature(Code::parse("1234"), init));

    const ColorState after = update_state(init, Code::parse("1234"), {2, 1});
    CHECK(signature(Code::parse("1235"), after) == signature(Code::parse("1236"), after));
    CHECK(signature(Code::parse("1235"), after) == signature(Code::parse("1237"), after));
    CHECK(signature(Code::parse("1235"), after) != signature(Code::parse("1245"), after));
    CHECK(signature(Code::parse("4321"), after) != signature(Code::parse("1234"), after));

    const ColorState zero = update_state(init, Code::parse("1223"), {0, 0});
    const Signature s = signature(Code::parse("4511"), zero);
    CHECK(signature(Code::parse("4512"), zero) == s);
    CHECK(signature(Code::parse("4531"), zero) == s);
    CHECK(signature(Code::parse("1111"), zero).all_zero());
}

TEST_CASE("first level representatives")
{
    const Params p47 = Params::standard(4, 7);
    const auto all = codes_of(p47);
    const auto reps = representatives(all, ColorState::initial(p47));
    // the three-color class is listed under its first member 1123 (1223 belongs to it)
    const std::map<std::string, std::size_t> expected{
        {"1111", 7}, {"1112", 168}, {"1122", 126}, {"1123", 1260}, {"1234", 840}};
    CHECK(rep_map(reps) == expected);
    std::size_t total = 0;
    for (const auto &r : reps)
        total += r.class_size;
    CHECK(total == 2401);

    const Params p34 = Params::standard(3, 4);
    const auto reps34 = rep_map(representatives(codes_of(p34), ColorState::initial(p34)));
    CHECK(reps34.size() == 3);
    CHECK(reps34.count("111") == 1);
    CHECK(reps34.count("112") == 1);
    CHECK(reps34.count("123") == 1);
}

TEST_CASE("representatives after a (0,0) answer")
{
    const Params p34 = Params::standard(3, 4);
    const auto r34 = representatives(codes_of(p34), update_state(ColorState::initial(p34), Code::parse("112"), {0, 0}));
    CHECK(r34.size() == 11);

    const Params p47 = Params::standard(4, 7);
    const auto r47 =
        representatives(codes_of(p47), update_state(ColorState::initial(p47), Code::parse("1123"), {0, 0}));
    CHECK(r47.size() == 41);
}

namespace {

// Every member of a signature class must have the same exact value on the
// candidates consistent with the history. Where positions are still
// interchangeable the same holds for the peg-order-free classes.
void check_classes(int pegs, int colors, int depth_limit, bool extended = false)
{
    const Params params = extended ? Params::extended(pegs, colors) : Params::standard(pegs, colors);
    const auto guesses = codes_of(params);
    const auto secrets = enumerate_codes(params, Alphabet::secret);
    oracle::BruteForce brute(pegs, colors, extended ? 2 : 0);
    const auto ref = oracle::all_codes(pegs, colors);

    auto guess_value = [&](const std::vector<int> &set, const Code &guess) {
        std::map<std::pair<int, int>, std::vector<int>> parts;
        std::vector<int> g(guess.size());
        for (int i = 0; i < guess.size(); ++i)
            g[static_cast<std::size_t>(i)] = guess[i];
        for (int s : set)
            parts[oracle::grade(g, ref[static_cast<std::size_t>(s)])].push_back(s);
        std::int64_t v = static_cast<std::int64_t>(set.size());
        for (auto &[gr, part] : parts)
            if (gr.first != pegs)
                v += brute.cost(part);
        return v;
    };

    std::function<void(const std::vector<int> &, const ColorState &, int)> visit =
        [&](const std::vector<int> &set, const ColorState &state, int depth) {
            if (set.size() <= 1)
                return;
            std::map<Signature, std::int64_t> value, unordered;
            for (const Code &guess : guesses) {
                const Signature sig = signature(guess, state);
                if (sig.all_zero())
                    continue;
                const std::int64_t v = guess_value(set, guess);
                auto [it, fresh] = value.emplace(sig, v);
                REQUIRE(it->second == v);
                if (state.positions_symmetric()) {
                    auto [jt, new_class] = unordered.emplace(position_free_signature(guess, state), v);
                    REQUIRE(jt->second == v);
                }
            }
            if (depth >= depth_limit)
                return;
            for (const Code &guess : guesses) {
                std::map<Grade, std::vector<int>> parts;
                for (int s : set)
                    parts[grade(guess, secrets[static_cast<std::size_t>(s)])].push_back(s);
                for (auto &[gr, part] : parts)
                    if (gr.black != pegs && part.size() < set.size())
                        visit(part, update_state(state, guess, gr), depth + 1);
            }
        };
    std::vector<int> all(secrets.size());
    for (std::size_t i = 0; i < all.size(); ++i)
        all[i] = static_cast<int>(i);
    visit(all, ColorState::initial(params), 0);
}

} // namespace

TEST_CASE("signature classes are sound on small games")
{
    check_classes(2, 3, 2);
    check_classes(3, 2, 2);
    check_classes(2, 4, 2);
    check_classes(3, 3, 1);
    check_classes(2, 3, 2, true);
    check_classes(3, 2, 2, true);
    check_classes(4, 2, 1, true);
}

TEST_CASE("peg order is ignored only while positions are interchangeable")
{
    const Params p = Params::extended(3, 2);
    const ColorState init = ColorState::initial(p);
    CHECK(position_free_signature(Code::parse("131"), init) == position_free_signature(Code::parse("113"), init));
    CHECK(position_free_signature(Code::parse("131"), init) == position_free_signature(Code::parse("322"), init));
    CHECK(position_free_signature(Code::parse("131"), init) != position_free_signature(Code::parse("133"), init));
    CHECK(position_free_signature(Code::parse("333"), init).all_zero());
    const ColorState mono = update_state(init, Code::parse("111"), {1, 0});
    CHECK(mono.positions_symmetric());
    CHECK(position_free_signature(Code::parse("123"), mono) == position_free_signature(Code::parse("312"), mono));
    CHECK(position_free_signature(Code::parse("123"), mono) != position_free_signature(Code::parse("223"), mono));
    CHECK_FALSE(update_state(init, Code::parse("112"), {1, 1}).positions_symmetric());
}
