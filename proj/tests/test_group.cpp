#include "doctest.h"

#include <algorithm>
#include <set>

#include "diffam/error.hpp"
#include "diffam/group.hpp"

using namespace diffam;

TEST_SUITE("group") {

TEST_CASE("cyclic group basics") {
    FiniteGroup g = build_cyclic(12);
    CHECK(g.order() == 12);
    CHECK(g.identity() == 0);
    CHECK(g.is_abelian());
    CHECK(g.op(5, 9) == 2);
    CHECK(g.inverse(5) == 7);
    CHECK(g.difference(3, 8) == 7);
    CHECK(g.label(11) == "11");
    CHECK(g.element("11") == 11);
    CHECK(g.spec().text() == "Z:12");
}

TEST_CASE("group spec parsing round-trips") {
    for (const std::string text :
         {"Z:7", "GFadd:5^2", "GFmul:2^3", "SD:5:8:4", "A:5", "Spence:3:1:2"}) {
        GroupSpec spec = GroupSpec::parse(text);
        CHECK(spec.text() == text);
        CHECK(GroupSpec::parse(spec.text()) == spec);
    }
    CHECK_THROWS_AS(GroupSpec::parse("Z"), Error);
    CHECK_THROWS_AS(group_from_spec("Z:0"), Error);
    CHECK_THROWS_AS(group_from_spec("Q:8"), Error);
}

TEST_CASE("semidirect product relations") {
    FiniteGroup g = group_from_spec("SD:3:2:2"); // symmetric group on 3 points
    CHECK(g.order() == 6);
    CHECK_FALSE(g.is_abelian());
    const Elem a = parse_element(g, "a");
    const Elem b = parse_element(g, "b");
    const Elem e = g.identity();
    CHECK(g.op(a, g.op(a, a)) == e);
    CHECK(g.op(b, b) == e);
    // b a b^-1 = a^t with t = 2
    CHECK(g.op(g.op(b, a), g.inverse(b)) == g.op(a, a));
    CHECK(g.op(b, a) == parse_element(g, "a^2b"));
    CHECK(g.label(e) == "1");
}

TEST_CASE("semidirect with t = 1 is the direct product") {
    FiniteGroup g = group_from_spec("SD:3:4:1");
    CHECK(g.order() == 12);
    CHECK(g.is_abelian());
}

TEST_CASE("semidirect parameter validation") {
    CHECK_THROWS_AS(build_semidirect_cyclic(4, 2, 2), Error); // gcd(t, n) != 1
    CHECK_THROWS_AS(build_semidirect_cyclic(5, 2, 2), Error); // t^m != 1 (mod n)
}

TEST_CASE("alternating groups and cycle notation") {
    FiniteGroup a3 = group_from_spec("A:3");
    CHECK(a3.order() == 3);
    CHECK(a3.is_abelian());

    FiniteGroup a4 = group_from_spec("A:4");
    CHECK(a4.order() == 12);
    CHECK_FALSE(a4.is_abelian());
    CHECK(a4.label(a4.identity()) == "id");

    // Default composition applies the right factor first: (123)(124) = (13)(24).
    const Elem s = parse_element(a4, "(123)");
    const Elem t = parse_element(a4, "(124)");
    CHECK(a4.op(s, t) == parse_element(a4, "(13)(24)"));

    FiniteGroup a4lr = build_alternating(4, PermComposition::left_to_right);
    const Elem s2 = parse_element(a4lr, "(123)");
    const Elem t2 = parse_element(a4lr, "(124)");
    CHECK(a4lr.op(s2, t2) == parse_element(a4lr, "(14)(23)"));

    FiniteGroup a5 = group_from_spec("A:5");
    CHECK(a5.order() == 60);
    CHECK(parse_element(a5, "(25)(34)") == a5.inverse(parse_element(a5, "(25)(34)")));
}

TEST_CASE("twisted-residue group of order 8") {
    FiniteGroup g = group_from_spec("Spence:3:1:2");
    CHECK(g.order() == 8);
    CHECK_FALSE(g.is_abelian());
    CHECK(g.identity() == 0);
    // every group axiom was validated on construction; spot-check closure
    std::set<Elem> seen;
    for (Elem x = 0; x < 8; ++x) seen.insert(g.op(x, 5));
    CHECK(seen.size() == 8);
}

TEST_CASE("twisted-residue group with a single digit is cyclic") {
    FiniteGroup g = group_from_spec("Spence:7:1:1"); // order 6
    FiniteGroup z = build_cyclic(6);
    CHECK(g.order() == 6);
    CHECK(g.is_abelian());
    for (Elem x = 0; x < 6; ++x)
        for (Elem y = 0; y < 6; ++y) CHECK(g.op(x, y) == z.op(x, y));
}

TEST_CASE("explicit table validation") {
    // Klein four-group.
    std::vector<std::string> labels{"e", "x", "y", "z"};
    std::vector<int> table{0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
    FiniteGroup g = FiniteGroup::from_table(GroupSpec{GroupKind::cayley, 0, 0, 0, "-"},
                                            labels, table);
    CHECK(g.order() == 4);
    CHECK(g.is_abelian());
    for (Elem x = 0; x < 4; ++x) CHECK(g.inverse(x) == x);

    // A latin square that is not associative must be rejected.
    std::vector<int> bad{0, 1, 2, 3, 4,
                         1, 0, 3, 4, 2,
                         2, 4, 0, 1, 3,
                         3, 2, 4, 0, 1,
                         4, 3, 1, 2, 0};
    std::vector<std::string> bad_labels{"0", "1", "2", "3", "4"};
    CHECK_THROWS_AS(
        FiniteGroup::from_table(GroupSpec{GroupKind::cayley, 0, 0, 0, "-"}, bad_labels, bad),
        Error);
}

TEST_CASE("subgroup generation and closure checking") {
    FiniteGroup g = build_cyclic(16);
    Subgroup h = subgroup_from(g, {4});
    CHECK(h.elements == std::vector<Elem>{0, 4, 8, 12});
    CHECK(h.is_normal);
    CHECK(h.contains(8));
    CHECK_FALSE(h.contains(2));

    CHECK_THROWS_AS(subgroup_from_elements(build_cyclic(4), {0, 1}), Error);
    Subgroup whole = subgroup_from(g, {1});
    CHECK(whole.order() == 16);
    Subgroup trivial = subgroup_from(g, {});
    CHECK(trivial.elements == std::vector<Elem>{0});
}

TEST_CASE("subgroup enumeration is complete") {
    // Z12 has one subgroup per divisor of 12.
    CHECK(all_subgroups(build_cyclic(12)).size() == 6);

    // The symmetric group on 3 points has 6 subgroups; only the trivial
    // one, the rotation subgroup, and the whole group are normal.
    FiniteGroup s3 = group_from_spec("SD:3:2:2");
    std::vector<Subgroup> subs = all_subgroups(s3);
    CHECK(subs.size() == 6);
    int normal = 0, order2 = 0;
    for (const Subgroup& h : subs) {
        if (h.is_normal) ++normal;
        if (h.order() == 2) {
            ++order2;
            CHECK_FALSE(h.is_normal);
        }
    }
    CHECK(normal == 3);
    CHECK(order2 == 3);

    // A4: 1 + 3 + 4 + 1 + 1 = 10 subgroups, unique Klein subgroup normal.
    std::vector<Subgroup> a4subs = all_subgroups(group_from_spec("A:4"));
    CHECK(a4subs.size() == 10);
    int order4 = 0;
    for (const Subgroup& h : a4subs)
        if (h.order() == 4) {
            ++order4;
            CHECK(h.is_normal);
        }
    CHECK(order4 == 1);
}

TEST_CASE("subgroup ownership is enforced") {
    FiniteGroup g = build_cyclic(6), other = build_cyclic(7);
    Subgroup h = subgroup_from(g, {3});
    CHECK_NOTHROW(require_subgroup_of(g, h));
    CHECK_THROWS_AS(require_subgroup_of(other, h), Error);
}

TEST_CASE("cosets are ordered and partition the group") {
    FiniteGroup g = build_cyclic(6);
    Subgroup h = subgroup_from(g, {3});
    std::vector<std::vector<Elem>> cosets = cosets_of(g, h);
    REQUIRE(cosets.size() == 3);
    CHECK(cosets[0] == std::vector<Elem>{0, 3});
    CHECK(cosets[1] == std::vector<Elem>{1, 4});
    CHECK(cosets[2] == std::vector<Elem>{2, 5});

    // Non-normal subgroup: left and right cosets differ.
    FiniteGroup s3 = group_from_spec("SD:3:2:2");
    Subgroup refl = subgroup_from(s3, {parse_element(s3, "b")});
    CHECK_FALSE(refl.is_normal);
    CHECK(cosets_of(s3, refl, Side::left) != cosets_of(s3, refl, Side::right));
}

TEST_CASE("translates") {
    FiniteGroup g = build_cyclic(10);
    CHECK(translate(g, 3, {1, 2}) == std::vector<Elem>{4, 5});
    FiniteGroup s3 = group_from_spec("SD:3:2:2");
    const Elem a = parse_element(s3, "a"), b = parse_element(s3, "b");
    CHECK(translate(s3, b, {a}, Side::left) == std::vector<Elem>{s3.op(b, a)});
    CHECK(translate(s3, b, {a}, Side::right) == std::vector<Elem>{s3.op(a, b)});
}

TEST_CASE("labels round-trip through parse_element in every group kind") {
    for (const std::string spec :
         {"Z:9", "SD:5:8:4", "A:4", "Spence:3:1:2", "GFadd:5^2", "GFmul:5^2"}) {
        FiniteGroup g = group_from_spec(spec);
        for (Elem x = 0; x < g.order(); ++x) {
            INFO(spec, ": label ", g.label(x));
            CHECK(parse_element(g, g.label(x)) == x);
        }
    }
    // the semidirect identity label "1" is the identity, not index 1
    FiniteGroup sd = group_from_spec("SD:5:8:4");
    CHECK(parse_element(sd, "1") == sd.identity());
}

TEST_CASE("element parsing") {
    FiniteGroup g = build_cyclic(9);
    CHECK(parse_element_list(g, "1, 3,8") == std::vector<Elem>{1, 3, 8});
    // cyclic groups read bare integers as residues
    CHECK(parse_element(g, "17") == 8);
    CHECK(parse_element(g, "-1") == 8);
    CHECK_THROWS_AS(parse_element(g, "9x"), Error);
    FiniteGroup a4 = group_from_spec("A:4");
    CHECK_THROWS_AS(parse_element(a4, "100"), Error); // out of range, not reduced
    CHECK_THROWS_AS(parse_element(a4, "(12)"), Error); // odd permutation
}

} // TEST_SUITE("group")
