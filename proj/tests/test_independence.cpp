#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "synchrolab/independence.hpp"

using namespace synchrolab;

TEST_CASE("associated_multigraph") {
    auto g1 = associated_multigraph(IndexMultiset(5, {{1, 0}}));
    CHECK(g1.edges == std::vector<std::pair<int, int>>{{0, 1}});

    auto g2 = associated_multigraph(IndexMultiset(5, {{1, 0}, {1, 1}, {2, 0}}));
    CHECK(g2.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});

    // duplicate edge, only possible at even n
    auto g3 = associated_multigraph(IndexMultiset(4, {{2, 1}, {2, 3}}));
    CHECK(g3.edges == std::vector<std::pair<int, int>>{{1, 3}, {1, 3}});

    CHECK_THROWS_AS(IndexMultiset(5, {{3, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(IndexMultiset(5, {{1, 5}}), std::invalid_argument);
}

TEST_CASE("is_acyclic with multiset semantics") {
    CHECK_FALSE(is_acyclic(IndexMultiset(5, {{1, 0}, {1, 1}, {2, 0}})));  // triangle
    CHECK(is_acyclic(IndexMultiset(6, {{1, 0}, {1, 2}})));                // disjoint edges
    CHECK_FALSE(is_acyclic(IndexMultiset(4, {{2, 1}, {2, 3}})));          // duplicate edge
    CHECK(is_acyclic(IndexMultiset(5, {})));
    CHECK(is_acyclic(IndexMultiset(5, {{1, 0}})));
}

TEST_CASE("multiplicity of each cyclic distance") {
    CHECK(multiplicity(1, 5) == 2);
    CHECK(multiplicity(0, 5) == 1);
    CHECK(multiplicity(0, 8) == 1);
    CHECK(multiplicity(2, 4) == 1);  // s = n/2
    CHECK(multiplicity(3, 5) == 0);  // out of range
    int total = 0;
    for (int s = 0; s <= 3; ++s) total += multiplicity(s, 7);
    CHECK(total == 7);
}

TEST_CASE("joint_pmf_bruteforce marginal law is m_s/n") {
    auto pmf = joint_pmf_bruteforce(IndexMultiset(5, {{1, 0}}));
    CHECK(pmf.at({0}) == BigRational(1, 5));
    CHECK(pmf.at({1}) == BigRational(2, 5));
    CHECK(pmf.at({2}) == BigRational(2, 5));
    CHECK(pmf.size() == 3);
}

TEST_CASE("joint_pmf_bruteforce factorizes over disjoint edges") {
    IndexMultiset s(11, {{1, 0}, {3, 5}});
    auto pmf = joint_pmf_bruteforce(s);
    for (int u = 0; u <= 5; ++u)
        for (int v = 0; v <= 5; ++v) {
            BigRational expected(BigInt(multiplicity(u, 11)) * multiplicity(v, 11), BigInt(121));
            auto it = pmf.find({u, v});
            BigRational actual = it == pmf.end() ? BigRational(0) : it->second;
            CHECK(actual == expected);
        }
}

TEST_CASE("joint_pmf_bruteforce exposes the triangle dependence") {
    auto pmf = joint_pmf_bruteforce(IndexMultiset(5, {{1, 0}, {1, 1}, {2, 0}}));
    // two equal coordinates force the third entry to zero
    for (int s = 1; s <= 2; ++s) CHECK(pmf.find({0, 0, s}) == pmf.end());
    CHECK(pmf.at({0, 0, 0}) == BigRational(5, 125));
}

TEST_CASE("verify_factorization") {
    CHECK(verify_factorization(IndexMultiset(6, {{1, 0}, {2, 2}})));
    CHECK_FALSE(verify_factorization(IndexMultiset(5, {{1, 0}, {1, 1}, {2, 0}})));
    CHECK(verify_factorization(IndexMultiset(5, {{2, 3}})));  // single variable
    CHECK_THROWS_AS(joint_pmf_bruteforce(IndexMultiset(20, {{1, 0}, {1, 2}, {1, 4}, {1, 6}, {1, 8}})),
                    capacity_error);
}

TEST_CASE("factorization agrees with acyclicity over small multisets") {
    const int n = 5;
    std::vector<std::pair<int, int>> all;
    for (int i = 1; i <= n / 2; ++i)
        for (int j = 0; j < n; ++j) all.emplace_back(i, j);
    // all multisets of size exactly 2 (with repetition)
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a; b < all.size(); ++b) {
            IndexMultiset s(n, {all[a], all[b]});
            CHECK(verify_factorization(s) == is_acyclic(s));
        }
}

TEST_CASE("circulant_structure gcd cycle decomposition") {
    CHECK(circulant_structure(6, 2) == std::pair{2, 3});
    CHECK(circulant_structure(5, 2) == std::pair{1, 5});
    CHECK(circulant_structure(6, 3) == std::pair{3, 2});
    CHECK_THROWS_AS(circulant_structure(6, 4), std::invalid_argument);
}
