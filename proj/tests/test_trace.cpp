#include "doctest.h"
#include "iwahori/trace.hpp"

#include <stdexcept>

using namespace iwahori;

namespace {

QLPoly qm1() { return QLPoly::q_pow(1) - QLPoly::constant(1); }

}  // namespace

TEST_CASE("degree one table") {
    TraceTable tab = l_values(1);
    REQUIRE(tab.values.size() == 3);
    CHECK(tab.at_half(0) == QLPoly::lam_pow(1));
    CHECK(tab.at_half(1) == -(qm1() * QLPoly::lam_pow(1)));
    CHECK(tab.at_half(2) == QLPoly::lam_pow(1));
}

TEST_CASE("degree two table") {
    TraceTable tab = l_values(2);
    CHECK(tab.at_half(0) == QLPoly::lam_pow(2));
    CHECK(tab.at_half(1) == -(qm1() * QLPoly::lam_pow(2)));
    // q + (q-1)^2 times lambda^2
    QLPoly expect = (QLPoly::q_pow(1) + qm1() * qm1()) * QLPoly::lam_pow(2);
    CHECK(tab.at_half(2) == expect);
    CHECK(tab.at_half(3) == tab.at_half(1));
    CHECK(tab.at_half(4) == QLPoly::lam_pow(2));
}

TEST_CASE("shift symmetry across all small degrees") {
    for (int d = 1; d <= 8; ++d) {
        TraceTable tab = l_values(d);
        REQUIRE(tab.values.size() == static_cast<size_t>(2 * d + 1));
        for (int t = 0; t <= 2 * d; ++t) CHECK(tab.at_half(t) == tab.at_half(2 * d - t));
    }
}

TEST_CASE("difference identity") {
    for (int d = 1; d <= 8; ++d) {
        TraceReport rep = verify_difference(d);
        INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
        CHECK(rep.ok);
    }
    // Spot values straight from the tables.
    TraceTable t1 = l_values(1);
    CHECK(t1.at_half(1) - t1.at_half(0) == -(QLPoly::q_pow(1) * QLPoly::lam_pow(1)));
    TraceTable t2 = l_values(2);
    CHECK(t2.at_half(2) - t2.at_half(1) == QLPoly::term(1, 2, 2));
}

TEST_CASE("unweighted shell sums") {
    for (int d = 1; d <= 8; ++d) {
        TraceReport rep = verify_unweighted(d);
        INFO((rep.failures.empty() ? std::string() : rep.failures.front()));
        CHECK(rep.ok);
    }
    TraceTable t2 = l_values(2);
    CHECK(t2.at_half(2) + qm1() * t2.at_half(1) == QLPoly::term(1, 1, 2));
    CHECK(t2.at_half(1) + qm1() * t2.at_half(0) == QLPoly());
}

TEST_CASE("the recursion is not applied past the midpoint") {
    // Naively running the integral-k branch at k = d gives a different value
    // than the symmetry fill; the table must hold the symmetric one.
    TraceTable t1 = l_values(1);
    QLPoly naive = QLPoly::term(1, 1, 1) - qm1() * t1.at_half(1);
    CHECK(naive != t1.at_half(2));
    CHECK(t1.at_half(2) == t1.at_half(0));
}

TEST_CASE("table argument validation") {
    CHECK_THROWS_AS(l_values(0), std::invalid_argument);
    CHECK_THROWS_AS(l_values(1).at_half(3), std::out_of_range);
}

TEST_CASE("operator dictionary") {
    std::vector<DictionaryEntry> table = sheaf_operator_table();
    REQUIRE(table.size() == 3);

    CHECK(table[0].ms == Multisegment{{{0, 1}, {1, 1}}});
    CHECK(table[0].eigenvalue == QLPoly::term(-1, 0, 1));
    CHECK(table[1].ms == Multisegment{{{0, 2}}});
    CHECK(table[1].eigenvalue == QLPoly::lam_pow(1));
    CHECK(table[2].ms == Multisegment{{{1, 2}}});
    CHECK(table[2].eigenvalue == QLPoly::lam_pow(1));

    std::vector<Multisegment> classes = enumerate_classes({1, 1}, 2);
    REQUIRE(classes.size() == table.size());
    for (size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].ms == classes[i]);
        CHECK(expected_eigenvalue(table[i].op) == table[i].eigenvalue);
    }
}
