#include "fracseq/grid.hpp"
#include "fracseq/perm.hpp"
#include "fracseq/sequence.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace fracseq;

namespace {
SignedPermutation P(std::vector<int> v) { return SignedPermutation(std::move(v)); }
}  // namespace

TEST_SUITE("signed-perm") {

TEST_CASE("construction rejects non-bijections") {
    CHECK_THROWS(P({1, 1}));
    CHECK_THROWS(P({1, 3}));
    CHECK_THROWS(P({0, 1}));
    CHECK_THROWS_WITH(parse_perm("[1,2,-1]"), doctest::Contains("magnitude 1"));
    CHECK(parse_perm("[2,-1]") == P({2, -1}));
    CHECK(parse_perm("3,1,2") == P({3, 1, 2}));
}

TEST_CASE("apply") {
    CHECK(apply(P({-2, 4, -1, 3}), SignedSequence({-3})).items() == Digits{1});
    CHECK(apply(P({1, 2}), SignedSequence({1, -2})).items() == Digits{1, -2});
    Digits s{1, 2, -1};
    Digits got = apply(P({2, -1}), SignedSequence(s)).items();
    CHECK(got == Digits{2, -1, -2});
    auto m = oracle::matrix({2, -1});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(oracle::mat_apply(m, s[i]) == got[i]);
    CHECK_THROWS(apply(P({2, 1}), SignedSequence({3})));
}

TEST_CASE("compose") {
    CHECK(compose(P({-2, 4, -1, 3}), P({3, -1, 4, -2})) == P({-1, 2, 3, -4}));
    CHECK(compose(P({2, -1}), P({1, 2})) == P({2, -1}));
    SignedPermutation mu = P({2, -1});
    CHECK(compose(compose(mu, mu), compose(mu, mu)).is_identity());
    CHECK_FALSE(compose(mu, mu).is_identity());
    CHECK_THROWS(compose(P({1}), P({1, 2})));
}

TEST_CASE("compose agrees with matrix product") {
    for (const auto& a : oracle::all_signed(3))
        for (const auto& b : oracle::all_signed(3)) {
            auto ma = oracle::matrix(a), mb = oracle::matrix(b);
            std::vector<std::vector<int>> prod(3, std::vector<int>(3, 0));
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int k = 0; k < 3; ++k) prod[i][j] += ma[i][k] * mb[k][j];
            CHECK(to_matrix(compose(P(a), P(b))) == prod);
        }
}

TEST_CASE("invert") {
    CHECK(invert(P({1, 3, 4, -2})) == P({1, -4, 2, 3}));
    CHECK(invert(P({1, 2, 3})) == P({1, 2, 3}));
    CHECK(invert(P({2, -1})) == P({-2, 1}));
    for (const auto& a : oracle::all_signed(3)) CHECK(compose(P(a), invert(P(a))).is_identity());
}

TEST_CASE("power") {
    SignedPermutation mu = P({2, -1});
    CHECK(power(mu, 0).is_identity());
    CHECK(power(mu, 4).is_identity());
    CHECK(power(mu, -1) == invert(mu));
    CHECK(power(mu, 3) == compose(mu, compose(mu, mu)));
}

TEST_CASE("parity") {
    CHECK(parity(P({-2, 4, -1, 3})) == -1);
    CHECK(oracle::determinant(oracle::matrix({-2, 4, -1, 3})) == -1);
    CHECK(parity(P({1, 2, 3})) == 1);
    CHECK(parity(P({2, -1})) == 1);
    CHECK(negative_count(P({2, -1})) == 1);
    CHECK(inversion_count(P({2, -1})) == 1);
}

TEST_CASE("matrix form") {
    PermMatrix m = to_matrix(P({-2, 4, -1, 3}));
    PermMatrix reference = {{0, 0, -1, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 1, 0, 0}};
    CHECK(m == reference);
    CHECK(to_matrix(P({1, 2, 3})) == PermMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    int n = 0;
    for (const auto& a : oracle::all_signed(3)) {
        CHECK(from_matrix(to_matrix(P(a))) == P(a));
        ++n;
    }
    CHECK(n == 48);
    CHECK_THROWS(from_matrix({{1, 1}, {0, 1}}));
}

TEST_CASE("named perms") {
    CHECK(named_perm("mu", 2) == P({2, -1}));
    CHECK(named_perm("tau_d", 2) == P({2, 1}));
    CHECK(named_perm("mu", 4) == P({2, 3, 4, -1}));
    CHECK(named_perm("mu", 3, true) == P({2, 3, 1}));
    CHECK(named_perm("tau_x", 2) == P({-1, 2}));
    CHECK(named_perm("tau_y", 2) == P({1, -2}));
    CHECK(named_perm("tau_-d", 2) == P({-2, -1}));
    CHECK(named_perm("negation", 3) == P({-1, -2, -3}));
    CHECK(named_perm("iota", 3) == P({1, 2, 3}));
    CHECK_THROWS(named_perm("tau_x", 3));
    CHECK_THROWS(named_perm("tau_y", 2, true));
    CHECK_THROWS(named_perm("spin", 2));
}

TEST_CASE("group generation") {
    CHECK(generate_group({P({3, -2, -1}), P({-1, -3, 2})}).size() == 24);
    CHECK(generate_group({P({1, 2, 3})}).size() == 1);
    CHECK(generate_group({P({4, 3, 1, 2}), P({4, -2, -1, 3})}).size() == 192);
    CHECK(oracle::group_order({{3, -2, -1}, {-1, -3, 2}}) == 24);
    CHECK(oracle::group_order({{4, 3, 1, 2}, {4, -2, -1, 3}}) == 192);
    CHECK_THROWS(generate_group({P({2, 3, 4, 5, 6, 7, 8, 1}), P({-1, 2, 3, 4, 5, 6, 7, 8}), P({2, 1, 3, 4, 5, 6, 7, 8})}, 100));
}

TEST_CASE("D4 Cayley table") {
    // rows a, columns b, entry a.b; the eight elements as words in mu and tau_y
    SignedPermutation mu = named_perm("mu", 2), ty = named_perm("tau_y", 2);
    auto g = generate_group({mu, ty});
    REQUIRE(g.size() == 8);
    std::vector<SignedPermutation> els = {P({1, 2}),   P({2, -1}),  P({-1, -2}), P({-2, 1}),
                                          P({1, -2}),  P({-2, -1}), P({-1, 2}),  P({2, 1})};
    for (const auto& e : els) CHECK(std::find(g.begin(), g.end(), e) != g.end());
    for (const auto& a : els)
        for (const auto& b : els) {
            auto c = compose(a, b);
            CHECK(std::find(els.begin(), els.end(), c) != els.end());
            auto ma = oracle::matrix(a.images()), mb = oracle::matrix(b.images());
            for (int x : {1, 2}) CHECK(c(x) == oracle::mat_apply(ma, oracle::mat_apply(mb, x)));
        }
    CHECK(compose(ty, mu) == named_perm("tau_-d", 2));
    CHECK(compose(mu, ty) == named_perm("tau_d", 2));
}

TEST_CASE("hyper-octahedral group sizes") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<SignedPermutation> gens;
        std::vector<int> id(n);
        for (int i = 0; i < n; ++i) id[i] = i + 1;
        auto flip = id;
        flip[0] = -1;
        gens.push_back(P(flip));
        for (int i = 0; i + 1 < n; ++i) {
            auto sw = id;
            std::swap(sw[i], sw[i + 1]);
            gens.push_back(P(sw));
        }
        std::size_t want = 1;
        for (int i = 1; i <= n; ++i) want *= 2 * i;
        CHECK(generate_group(gens).size() == want);
    }
}

TEST_CASE("grid isometry") {
    CHECK(is_grid_isometry(P({2, 3, 4, -1}), square_diagonal_grid()));
    CHECK(is_grid_isometry(P({2, 1}), square_grid()));
    CHECK_FALSE(is_grid_isometry(P({1, 3, 2, 4}), square_diagonal_grid()));
    CHECK_FALSE(is_grid_isometry(P({2, 3, 4, -1}), square_diagonal_grid(), true));
    CHECK(is_grid_isometry(P({2, 3, 4, -1}), eighth_roots_grid(), true));
    CHECK(is_grid_isometry(P({2, 3, -1}), triangular_grid(), true));
}

}
