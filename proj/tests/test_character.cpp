#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "exmod/character.hpp"

using namespace exmod;

namespace {

CharacterElement s(std::initializer_list<int> parts) {
    return CharacterElement::schur(Partition(parts));
}

// Independent multiplication oracle: expand both factors into full exponent
// vectors, convolve, and read off coefficients at sorted representatives.
CharacterElement multiply_by_monomials(const CharacterElement& a, const CharacterElement& b) {
    int deg = 0;
    for (int d : a.degrees()) deg = std::max(deg, d);
    int degb = 0;
    for (int d : b.degrees()) degb = std::max(degb, d);
    int vars = deg + degb;  // enough rows for every partition of the product degree
    auto ea = expand_orbits(monomial_expand(a, vars), vars);
    auto eb = expand_orbits(monomial_expand(b, vars), vars);
    std::map<std::vector<int>, long long> prod;
    for (const auto& [ma, ca] : ea)
        for (const auto& [mb, cb] : eb) {
            std::vector<int> m(vars);
            for (int i = 0; i < vars; ++i) m[i] = ma[i] + mb[i];
            prod[m] += ca * cb;
        }
    std::map<Partition, long long> weights;
    for (const auto& [m, c] : prod) {
        if (!std::is_sorted(m.rbegin(), m.rend())) continue;
        std::vector<int> sm(m);
        while (!sm.empty() && sm.back() == 0) sm.pop_back();
        if (c != 0) weights[Partition(std::move(sm))] = c;
    }
    return schur_from_weights(std::move(weights));
}

std::mt19937_64 rng(20260824);

CharacterElement random_rep_character(int max_degree, int max_terms) {
    auto pool = enumerate_partitions(max_degree);
    std::uniform_int_distribution<int> pick(1, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> coeff(1, 3);
    std::uniform_int_distribution<int> nterms(1, max_terms);
    CharacterElement out;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) out.add_term(pool[pick(rng)], coeff(rng));
    return out;
}

}  // namespace

TEST_CASE("schur basis and unit") {
    CHECK(multiply(CharacterElement::unit(), s({2, 1})) == s({2, 1}));
    CHECK(CharacterElement::schur(Partition{}).str() == "s[]");
}

TEST_CASE("pinned products via Pieri") {
    CHECK(multiply(s({1}), s({1})) == s({2}) + s({1, 1}));
    CHECK(multiply(s({1}), s({1, 1})) == s({2, 1}) + s({1, 1, 1}));
    CHECK(multiply(s({2}), s({1})) == s({3}) + s({2, 1}));
}

TEST_CASE("LR products agree with the monomial-convolution route") {
    auto pool = enumerate_partitions(4);
    for (const auto& mu : pool)
        for (const auto& nu : pool) {
            auto lr = multiply(CharacterElement::schur(mu), CharacterElement::schur(nu));
            auto mon = multiply_by_monomials(CharacterElement::schur(mu), CharacterElement::schur(nu));
            INFO(mu.str() << " * " << nu.str());
            CHECK(lr == mon);
        }
    // a couple of bigger spot checks
    for (auto [mu, nu] : {std::pair<Partition, Partition>{Partition{3, 2}, Partition{2, 2, 1}},
                          {Partition{4, 1}, Partition{3, 3}}}) {
        CHECK(multiply(CharacterElement::schur(mu), CharacterElement::schur(nu)) ==
              multiply_by_monomials(CharacterElement::schur(mu), CharacterElement::schur(nu)));
    }
}

TEST_CASE("schur derivative pinned values") {
    for (int n = 1; n <= 10; ++n) {
        CHECK(schur_derivative(CharacterElement::schur(Partition{n})) ==
              CharacterElement::schur(Partition{n - 1}));
        std::vector<int> col(n, 1), col1(n - 1, 1);
        CHECK(schur_derivative(CharacterElement::schur(Partition(std::move(col)))) ==
              CharacterElement::schur(Partition(std::move(col1))));
    }
    CHECK(schur_derivative(s({2, 1})) == s({2}) + s({1, 1}));
}

TEST_CASE("schur derivative via one-extra-variable branching oracle") {
    // Sh(s_lambda) expanded against the branching rule: restricting to one
    // fewer variable splits s_lambda(t, x) into sum over horizontal strips;
    // the t-linear part collects mu with |lambda/mu| = 1.
    for (const auto& lambda : enumerate_partitions(6)) {
        if (lambda.empty()) continue;
        CharacterElement expect;
        for (const auto& mu : partitions_of(lambda.size() - 1)) {
            // mu obtained by removing a single box <=> interlacing with one box
            bool ok = true;
            int diff = 0;
            for (int i = 0; i < lambda.rows(); ++i) {
                int d = lambda.part(i) - mu.part(i);
                if (d < 0 || mu.part(i) < lambda.part(i + 1)) { ok = false; break; }
                diff += d;
            }
            if (ok && diff == 1) expect += CharacterElement::schur(mu);
        }
        CHECK(schur_derivative(CharacterElement::schur(lambda)) == expect);
    }
}

TEST_CASE("frobenius twist pinned values") {
    PrimeChar p2(2);
    CHECK(frobenius_twist(s({1}), p2, 1) == s({2}) - s({1, 1}));
    CHECK(frobenius_twist(CharacterElement::unit(), p2, 1) == CharacterElement::unit());
    CHECK(frobenius_twist(CharacterElement::unit(), PrimeChar(3), 2) == CharacterElement::unit());
}

TEST_CASE("derivative kills twists") {
    for (int p : {2, 3}) {
        PrimeChar pc(p);
        for (int i = 0; i < 12; ++i) {
            auto a = random_rep_character(4, 3);
            CHECK(schur_derivative(frobenius_twist(a, pc, 1)).is_zero());
        }
    }
}

TEST_CASE("additivity and Leibniz on random representation characters") {
    for (int i = 0; i < 25; ++i) {
        auto a = random_rep_character(5, 3);
        auto b = random_rep_character(5, 3);
        CHECK(schur_derivative(a + b) == schur_derivative(a) + schur_derivative(b));
        CHECK(schur_derivative(multiply(a, b)) ==
              multiply(schur_derivative(a), b) + multiply(a, schur_derivative(b)));
    }
}

TEST_CASE("degree laws") {
    auto a = random_rep_character(5, 4);
    for (int d : schur_derivative(a).degrees()) {
        // every component of Sh(a) comes from the component one degree up
        CHECK(schur_derivative(a.component(d + 1)) == schur_derivative(a).component(d));
    }
    PrimeChar p3(3);
    auto t = frobenius_twist(a, p3, 1);
    for (int d : t.degrees()) CHECK(d % 3 == 0);
}

TEST_CASE("monomial expansion pinned values") {
    auto w = monomial_expand(s({2}), 2);
    REQUIRE(w.size() == 2);
    CHECK(w.at(Partition{2}) == 1);
    CHECK(w.at(Partition{1, 1}) == 1);
    CHECK(monomial_expand(s({1, 1}), 1).empty());
    auto u = monomial_expand(CharacterElement::unit(), 3);
    REQUIRE(u.size() == 1);
    CHECK(u.at(Partition{}) == 1);
}

TEST_CASE("plethysm pinned values and chain rule") {
    CHECK(plethysm_compose(s({2}), s({2}), 4) == s({4}) + s({2, 2}));
    auto f = s({2}) + s({1, 1}).scaled(2);
    CHECK(plethysm_compose(f, s({1}), 4) == f);
    CHECK(plethysm_compose(s({1}), s({3}) + s({2, 1}), 6) == s({3}) + s({2, 1}));

    // chain rule Sh(f[g]) = (Sh f)[g] * Sh(g)
    std::vector<CharacterElement> outers = {s({2}), s({1, 1}), s({3})};
    std::vector<CharacterElement> inners = {s({2}), s({1, 1}), s({2, 1})};
    for (const auto& fo : outers)
        for (const auto& gi : inners) {
            int cap = 9;  // both compositions have degree <= 9
            auto lhs = schur_derivative(plethysm_compose(fo, gi, cap));
            auto rhs = multiply(plethysm_compose(schur_derivative(fo), gi, cap),
                                schur_derivative(gi));
            INFO(fo.str() << " o " << gi.str());
            CHECK(lhs == rhs);
        }
}

TEST_CASE("expansion of products convolves") {
    auto a = s({2, 1});
    auto b = s({1, 1});
    int vars = 5;
    auto ea = expand_orbits(monomial_expand(a, vars), vars);
    auto eb = expand_orbits(monomial_expand(b, vars), vars);
    auto eab = expand_orbits(monomial_expand(multiply(a, b), vars), vars);
    std::map<std::vector<int>, long long> conv;
    for (const auto& [ma, ca] : ea)
        for (const auto& [mb, cb] : eb) {
            std::vector<int> m(vars);
            for (int i = 0; i < vars; ++i) m[i] = ma[i] + mb[i];
            conv[m] += ca * cb;
        }
    for (auto it = conv.begin(); it != conv.end();)
        it = it->second == 0 ? conv.erase(it) : std::next(it);
    CHECK(conv == eab);
}

TEST_CASE("character text forms") {
    auto c = s({2, 1}) + s({1, 1, 1}).scaled(2);
    CHECK(c.str() == "s[2,1] + 2*s[1,1,1]");
    CHECK(CharacterElement::parse("s[2,1] + 2*s[1,1,1]") == c);
    CHECK(CharacterElement::parse("s[5]") == s({5}));
    CHECK(CharacterElement::parse("-s[1] + s[2]") == s({2}) - s({1}));
    CHECK(CharacterElement::zero().str() == "0");
    CHECK_THROWS(CharacterElement::parse("nope"));
}
