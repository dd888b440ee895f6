#include <doctest.h>

#include "test_util.hpp"
#include "vcobs/errors.hpp"
#include "vcobs/obstruction.hpp"
#include "vcobs/vc_solvers.hpp"

using namespace vcobs;
using namespace vcobs::testutil;

TEST_CASE("method1 replaces an edge by a length-3 path") {
    CHECK(are_isomorphic(method1(complete(3), EdgeRef(0, 1)), cycle(5)));
    CHECK(are_isomorphic(method1(cycle(5), EdgeRef(0, 1)), cycle(7)));
    CHECK(are_isomorphic(method1(complete(2), EdgeRef(0, 1)), path(4)));
    Graph g = method1(complete(4), EdgeRef(1, 2));
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == complete(4).edge_count() + 2);
    CHECK_THROWS_AS(method1(path(3), EdgeRef(0, 2)), StructuralError);
}

TEST_CASE("method2 clones a closed neighborhood") {
    CHECK(are_isomorphic(method2(complete(3), 0), complete(4)));
    CHECK(are_isomorphic(method2(complete(2), 1), complete(3)));
    CHECK(are_isomorphic(method2(Graph(1), 0), complete(2)));
    Graph g = method2(star(3), 0);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 3 + 3 + 1);
    CHECK_THROWS_AS(method2(complete(3), 5), StructuralError);
}

TEST_CASE("is_obstruction hand checks") {
    CHECK(is_obstruction(complete(3), 1));
    CHECK(is_obstruction(cycle(5), 2));
    CHECK(is_obstruction(complete(4), 2));
    // bowtie: two triangles sharing a vertex; vc = 3 but not minor-minimal
    Graph bowtie = Graph::from_edges(5, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {3, 4}, {2, 4}});
    CHECK(exact_vc(bowtie).size == 3);
    CHECK(!is_obstruction(bowtie, 2));
    CHECK(!is_obstruction(cycle(4), 2));  // vc(C4) = 2, inside the family
    CHECK(!is_obstruction(cycle(5), 3));  // vc too small for k=3
}

TEST_CASE("next_level from {K3} yields exactly {K4, C5}") {
    ObstructionLevel one;
    one.k = 1;
    Graph k3 = complete(3);
    one.members.push_back({k3, canonical_form(k3), Provenance::Seed});
    ObstructionLevel two = next_level(one);
    CHECK(two.k == 2);
    CHECK(two.members.size() == 2);
    CHECK(two.contains(canonical_form(complete(4))));
    CHECK(two.contains(canonical_form(cycle(5))));
    CHECK(!two.possibly_incomplete);
    for (std::size_t i = 1; i < two.members.size(); ++i)
        CHECK(two.members[i - 1].code < two.members[i].code);
}

TEST_CASE("next_level of an empty level is empty") {
    ObstructionLevel empty;
    empty.k = 3;
    CHECK(next_level(empty).members.empty());
}

TEST_CASE("brute_force_obstructions k=1") {
    ObstructionLevel level = brute_force_obstructions(1, 5);
    REQUIRE(level.members.size() == 1);
    CHECK(are_isomorphic(level.members[0].graph, complete(3)));
    CHECK(brute_force_obstructions(1, 2).members.empty());
}

TEST_CASE("brute_force_obstructions caps") {
    CHECK_THROWS_AS(brute_force_obstructions(4, 5), CapExceeded);
    CHECK_THROWS_AS(brute_force_obstructions(1, 9), CapExceeded);
}

TEST_CASE("generate_up_to(2): verified, deduped and complete at small k") {
    auto levels = generate_up_to(2);
    REQUIRE(levels.size() == 2);
    CHECK(levels.at(1).members.size() == 1);
    CHECK(are_isomorphic(levels.at(1).members[0].graph, complete(3)));
    CHECK(levels.at(2).members.size() == 2);
    for (const auto& [k, level] : levels) {
        for (const auto& m : level.members) {
            CHECK(m.graph.is_connected());
            CHECK(exact_vc(m.graph).size == k + 1);
            CHECK(is_obstruction(m.graph, k));
        }
    }
    // completeness vs the exhaustive oracle at the same vertex bound
    ObstructionLevel oracle = brute_force_obstructions(2, 7);
    for (const auto& m : levels.at(2).members) CHECK(oracle.contains(m.code));
    for (const auto& m : oracle.members)
        if (m.graph.vertex_count() <= 3 * 2 + 2) CHECK(levels.at(2).contains(m.code));
}

TEST_CASE("g6 persistence round-trip") {
    auto levels = generate_up_to(2);
    std::string text = level_to_g6(levels.at(2));
    ObstructionLevel loaded = level_from_g6(2, text, /*reverify=*/true);
    CHECK(loaded.members.size() == levels.at(2).members.size());
    for (std::size_t i = 0; i < loaded.members.size(); ++i)
        CHECK(loaded.members[i].code == levels.at(2).members[i].code);
    CHECK(level_to_g6(loaded) == text);
}

TEST_CASE("counts csv shape") {
    auto levels = generate_up_to(2);
    std::string csv = counts_csv(levels);
    CHECK(csv.find("k,count,seed,method1,method2,brute-force,possibly_incomplete\n") == 0);
    CHECK(csv.find("\n1,1,1,0,0,0,0\n") != std::string::npos);
    CHECK(csv.find("\n2,2,0,1,1,0,0\n") != std::string::npos);
}

TEST_CASE("family facts C_{2k+1} and K_{k+2} at level 3") {
    auto levels = generate_up_to(3);
    CHECK(levels.at(3).contains(canonical_form(cycle(7))));
    CHECK(levels.at(3).contains(canonical_form(complete(5))));
}
